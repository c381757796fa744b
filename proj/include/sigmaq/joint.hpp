#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sigmaq/behavior.hpp"
#include "sigmaq/errors.hpp"
#include "sigmaq/linear_system.hpp"
#include "sigmaq/scenario.hpp"
#include "sigmaq/simplex.hpp"

namespace sigmaq {

inline constexpr double kDefaultDeltaTol = 1e-7;

/// A signed joint distribution on the atom space: sums to one, individual
/// weights may be negative. delta = total variation mass - 1.
template <class T>
struct SignedJoint {
  std::vector<T> p;
  T mass;
  T delta;
};

/// Minimal-L1 signed joint via the split-variable LP: p = u - v, u,v >= 0,
/// minimize sum(u+v) subject to A(u-v) = b. delta is canonical even when the
/// minimizer is not; the simplex vertex returned is deterministic.
template <class T>
SignedJoint<T> solve_min_l1(const ConstraintSystem<T>& system) {
  using tr = scalar_traits<T>;
  int m = system.row_count(), n = system.column_count();
  std::vector<std::vector<T>> a(m, std::vector<T>(2 * n));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      a[i][j] = system.rows[i][j];
      a[i][n + j] = -system.rows[i][j];
    }
  }
  std::vector<T> c(2 * n, tr::one());
  auto result = lp_solve(a, system.rhs, c);
  if (result.status != LpStatus::optimal)
    throw InconsistentSystem("L1 minimization LP did not reach an optimum");
  SignedJoint<T> joint;
  joint.p.resize(n);
  joint.mass = tr::zero();
  for (int j = 0; j < n; ++j) {
    joint.p[j] = result.x[j] - result.x[n + j];
    joint.mass += tr::abs(joint.p[j]);
  }
  joint.delta = joint.mass - tr::one();
  return joint;
}

/// True iff a nonnegative solution of A p = b exists (LP feasibility phase).
template <class T>
bool nonneg_feasible(const ConstraintSystem<T>& system) {
  using tr = scalar_traits<T>;
  int n = system.column_count();
  std::vector<T> c(n, tr::zero());
  auto result = lp_solve(system.rows, system.rhs, c);
  return result.status == LpStatus::optimal;
}

/// Range of one atom's weight over the solutions of A p = b in which every
/// other atom weight is nonnegative (the chosen atom is unconstrained).
/// Returns none when no such solution exists. When the two bounds coincide,
/// the atom's weight is forced.
template <class T>
std::optional<std::pair<T, T>> atom_weight_range(const ConstraintSystem<T>& system,
                                                 std::uint32_t atom) {
  using tr = scalar_traits<T>;
  int m = system.row_count(), n = system.column_count();
  // columns: the n-1 nonnegative atoms, then s, t with p_atom = s - t
  std::vector<std::vector<T>> a(m, std::vector<T>(n + 1));
  for (int i = 0; i < m; ++i) {
    int k = 0;
    for (int j = 0; j < n; ++j) {
      if (j == static_cast<int>(atom)) continue;
      a[i][k++] = system.rows[i][j];
    }
    a[i][n - 1] = system.rows[i][atom];
    a[i][n] = -system.rows[i][atom];
  }
  std::vector<T> c(n + 1, tr::zero());
  c[n - 1] = tr::one();
  c[n] = -tr::one();
  auto lo = lp_solve(a, system.rhs, c);
  if (lo.status != LpStatus::optimal) return std::nullopt;
  for (auto& x : c) x = -x;
  auto hi = lp_solve(a, system.rhs, c);
  if (hi.status != LpStatus::optimal) return std::nullopt;
  return std::make_pair(lo.objective, -hi.objective);
}

/// Sums atom weights over each joint outcome of the given context variables.
/// For declared contexts the result must be a genuine probability table;
/// undeclared variable sets are allowed only with allow_undeclared and may
/// contain negative entries.
template <class T>
ContextTable<T> marginalize(const AtomSpace& space, const SignedJoint<T>& joint,
                            const std::vector<int>& vars, bool allow_undeclared = false,
                            double eps_norm = kDefaultNormTol) {
  const Scenario& scenario = space.scenario();
  int declared = -1;
  for (int c = 0; c < scenario.context_count(); ++c) {
    if (std::set<int>(scenario.contexts()[c].begin(), scenario.contexts()[c].end()) ==
        std::set<int>(vars.begin(), vars.end()))
      declared = c;
  }
  if (declared < 0 && !allow_undeclared)
    throw NotAContext("variables do not form a declared context");

  int m = static_cast<int>(vars.size());
  ContextTable<T> table;
  table.context = declared;
  table.p.assign(std::size_t{1} << m, scalar_traits<T>::zero());
  for (std::uint32_t a = 0; a < space.size(); ++a) {
    std::uint32_t o = 0;
    for (int j = 0; j < m; ++j)
      if (space.sign(a, vars[j]) < 0) o |= std::uint32_t{1} << (m - 1 - j);
    table.p[o] += joint.p[a];
  }
  if (declared >= 0) {
    for (const T& w : table.p)
      if (scalar_traits<T>::to_double(w) < -eps_norm)
        throw NegativeMarginal("declared-context marginal is negative");
  }
  return table;
}

}  // namespace sigmaq
