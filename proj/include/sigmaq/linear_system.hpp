#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sigmaq/behavior.hpp"
#include "sigmaq/errors.hpp"
#include "sigmaq/scenario.hpp"

namespace sigmaq {

struct RowLabel {
  // empty set = normalization row; otherwise the sorted variable subset of a
  // product-moment row.
  std::vector<int> variables;

  bool is_normalization() const { return variables.empty(); }

  std::string describe(const Scenario& scenario) const {
    if (is_normalization()) return "normalization";
    std::string s = "<";
    for (int v : variables) s += scenario.variables()[v];
    return s + ">";
  }
};

/// The linear system A p = b tying atom weights to observed moments.
/// Row entries are +1/-1 sign products (all ones for normalization).
template <class T>
struct ConstraintSystem {
  AtomSpace space;
  std::vector<std::vector<T>> rows;
  std::vector<T> rhs;
  std::vector<RowLabel> labels;

  int row_count() const { return static_cast<int>(rows.size()); }
  int column_count() const { return static_cast<int>(space.size()); }
};

/// One row per distinct moment: normalization first, then one first-moment
/// row per variable (taken from its first declared context; no-signaling
/// makes the others agree), then product-moment rows for every variable
/// subset of size >= 2 of each context, deduplicated across contexts.
template <class T>
ConstraintSystem<T> assemble_constraints(const Behavior<T>& behavior,
                                         double eps_ns = kDefaultNoSignalingTol) {
  using tr = scalar_traits<T>;
  behavior.validate();
  auto ns = check_no_signaling(behavior, eps_ns);
  if (!ns.pass)
    throw SignalingDetected("behavior is signaling (max marginal discrepancy " +
                            std::to_string(ns.max_discrepancy) + ")");

  const Scenario& scenario = behavior.scenario;
  ConstraintSystem<T> sys{build_atom_space(scenario), {}, {}, {}};
  std::uint32_t n_atoms = sys.space.size();

  auto add_row = [&](const std::vector<int>& subset, const T& value) {
    std::vector<T> row(n_atoms);
    for (std::uint32_t a = 0; a < n_atoms; ++a) {
      int s = 1;
      for (int v : subset) s *= sys.space.sign(a, v);
      row[a] = tr::from_int(s);
    }
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(value);
    sys.labels.push_back(RowLabel{subset});
  };

  add_row({}, tr::one());

  // all product moments, keyed by sorted variable subset; first context wins
  std::map<std::vector<int>, T> moments;
  for (const auto& table : behavior.tables) {
    auto frag = moments_from_table(scenario, table);
    for (auto& [subset, value] : frag) {
      auto [it, inserted] = moments.emplace(subset, value);
      if (!inserted &&
          std::fabs(tr::to_double(it->second) - tr::to_double(value)) > eps_ns)
        throw SignalingDetected("contexts disagree on a shared product moment");
    }
  }

  for (int v = 0; v < scenario.variable_count(); ++v) add_row({v}, moments.at({v}));
  // product rows in context declaration order, sub-ordered by subset size then
  // position, skipping subsets already emitted
  std::set<std::vector<int>> emitted;
  for (const auto& table : behavior.tables) {
    const auto& ctx = scenario.contexts()[table.context];
    int m = static_cast<int>(ctx.size());
    std::vector<std::vector<int>> subsets;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
      if (std::popcount(mask) < 2) continue;
      std::vector<int> subset;
      for (int j = 0; j < m; ++j)
        if (mask & (std::uint32_t{1} << j)) subset.push_back(ctx[j]);
      std::sort(subset.begin(), subset.end());
      subsets.push_back(std::move(subset));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (auto& subset : subsets)
      if (emitted.insert(subset).second) add_row(subset, moments.at(subset));
  }
  return sys;
}

/// Affine solution family p0 + span{n_1..n_k} of A p = b.
template <class T>
struct SolutionFamily {
  std::vector<T> particular;
  std::vector<std::vector<T>> nullspace;  // basis vectors, atom-indexed

  int dimension() const { return static_cast<int>(nullspace.size()); }
};

/// Gauss-Jordan elimination; exact when T is rational.
template <class T>
SolutionFamily<T> solve_family(const ConstraintSystem<T>& system) {
  using tr = scalar_traits<T>;
  int m = system.row_count(), n = system.column_count();
  std::vector<std::vector<T>> a(m, std::vector<T>(n + 1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = system.rows[i][j];
    a[i][n] = system.rhs[i];
  }

  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot_col(n, false);
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int best = -1;
    double best_mag = tr::pivot_tol;
    for (int i = row; i < m; ++i) {
      double mag = std::fabs(tr::to_double(a[i][col]));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
        if (tr::is_exact) break;  // any nonzero pivot is fine in exact mode
      }
    }
    if (best < 0) continue;
    std::swap(a[row], a[best]);
    T inv = tr::one() / a[row][col];
    for (int j = col; j <= n; ++j) a[row][j] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      T f = a[i][col];
      if (tr::to_double(tr::abs(f)) == 0.0) continue;
      for (int j = col; j <= n; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_col_of_row.push_back(col);
    is_pivot_col[col] = true;
    ++row;
  }
  int rank = row;
  for (int i = rank; i < m; ++i)
    if (std::fabs(tr::to_double(a[i][n])) > (tr::is_exact ? 0.0 : 1e-9))
      throw InconsistentSystem("constraint system has no solution");

  SolutionFamily<T> family;
  family.particular.assign(n, tr::zero());
  for (int i = 0; i < rank; ++i) family.particular[pivot_col_of_row[i]] = a[i][n];
  for (int col = 0; col < n; ++col) {
    if (is_pivot_col[col]) continue;
    std::vector<T> basis(n, tr::zero());
    basis[col] = tr::one();
    for (int i = 0; i < rank; ++i) basis[pivot_col_of_row[i]] = -a[i][col];
    family.nullspace.push_back(std::move(basis));
  }
  return family;
}

}  // namespace sigmaq
