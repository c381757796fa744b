#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sigmaq/errors.hpp"
#include "sigmaq/rational.hpp"
#include "sigmaq/scenario.hpp"

namespace sigmaq {

inline constexpr double kDefaultNormTol = 1e-9;
inline constexpr double kDefaultNoSignalingTol = 1e-9;

/// Outcome indexing within a context of m variables mirrors the atom order:
/// lexicographic, +1 before -1; bit (m-1-j) set means context variable j is -1.
inline int outcome_sign(std::uint32_t outcome, int j, int m) {
  return (outcome >> (m - 1 - j)) & 1u ? -1 : +1;
}

inline std::string outcome_label(std::uint32_t outcome, int m) {
  std::string s(m, '+');
  for (int j = 0; j < m; ++j)
    if (outcome_sign(outcome, j, m) < 0) s[j] = '-';
  return s;
}

inline std::uint32_t outcome_from_label(const std::string& label) {
  std::uint32_t out = 0;
  int m = static_cast<int>(label.size());
  for (int j = 0; j < m; ++j) {
    char c = label[j];
    if (c != '+' && c != '-') throw ParseError("bad outcome label: " + label);
    if (c == '-') out |= std::uint32_t{1} << (m - 1 - j);
  }
  return out;
}

/// Normalized probability table over one context's joint outcomes.
template <class T>
struct ContextTable {
  int context = -1;          // index into the scenario's context list
  std::vector<T> p;          // 2^m entries, outcome-indexed

  int outcome_count() const { return static_cast<int>(p.size()); }
};

template <class T>
void validate_table(const ContextTable<T>& table, int context_size, double eps_norm) {
  using tr = scalar_traits<T>;
  if (table.outcome_count() != (1 << context_size))
    throw ParseError("context table has wrong number of entries");
  T sum = tr::zero();
  for (const T& w : table.p) {
    if (tr::to_double(w) < -eps_norm) throw ParseError("negative probability in context table");
    sum += w;
  }
  if (std::fabs(tr::to_double(sum) - 1.0) > eps_norm)
    throw ParseError("context table not normalized");
}

/// Observed statistics: one normalized table per declared context.
template <class T>
struct Behavior {
  Scenario scenario;
  std::vector<ContextTable<T>> tables;

  const ContextTable<T>& table_for(int context) const { return tables.at(context); }

  void validate(double eps_norm = kDefaultNormTol) const {
    if (tables.size() != scenario.contexts().size())
      throw ParseError("behavior must have one table per context");
    for (std::size_t c = 0; c < tables.size(); ++c) {
      if (tables[c].context != static_cast<int>(c))
        throw ParseError("behavior tables out of order");
      validate_table(tables[c], static_cast<int>(scenario.contexts()[c].size()), eps_norm);
    }
  }
};

/// All product moments of one context: map from the sorted variable-index
/// subset (size >= 1) to <prod of signs>.
template <class T>
using MomentMap = std::map<std::vector<int>, T>;

namespace detail {
template <class T>
void subset_moments(const Scenario& scenario, const ContextTable<T>& table, int min_size,
                    MomentMap<T>& out) {
  const auto& ctx = scenario.contexts().at(table.context);
  int m = static_cast<int>(ctx.size());
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << m); ++mask) {
    if (static_cast<int>(std::popcount(mask)) < min_size) continue;
    std::vector<int> subset;
    for (int j = 0; j < m; ++j)
      if (mask & (std::uint32_t{1} << j)) subset.push_back(ctx[j]);
    std::sort(subset.begin(), subset.end());
    T moment = scalar_traits<T>::zero();
    for (std::uint32_t o = 0; o < (std::uint32_t{1} << m); ++o) {
      int s = 1;
      for (int j = 0; j < m; ++j)
        if (mask & (std::uint32_t{1} << j)) s *= outcome_sign(o, j, m);
      moment += scalar_traits<T>::from_int(s) * table.p[o];
    }
    out[subset] = moment;
  }
}
}  // namespace detail

/// Expectations <V>, <VW>, ... for every variable subset of the table's
/// context.
template <class T>
MomentMap<T> moments_from_table(const Scenario& scenario, const ContextTable<T>& table) {
  MomentMap<T> out;
  detail::subset_moments(scenario, table, 1, out);
  return out;
}

/// Inverse of moments_from_table for 2-variable contexts:
/// p(x,y) = (1 + x<X> + y<Y> + xy<XY>)/4.
template <class T>
ContextTable<T> table_from_moments(const T& mx, const T& my, const T& mxy, int context = -1,
                                   double eps_norm = kDefaultNormTol) {
  using tr = scalar_traits<T>;
  ContextTable<T> table;
  table.context = context;
  table.p.resize(4);
  T quarter = tr::one() / tr::from_int(4);
  for (std::uint32_t o = 0; o < 4; ++o) {
    int x = outcome_sign(o, 0, 2), y = outcome_sign(o, 1, 2);
    T v = (tr::one() + tr::from_int(x) * mx + tr::from_int(y) * my +
           tr::from_int(x * y) * mxy) *
          quarter;
    if (tr::to_double(v) < -eps_norm)
      throw InfeasibleMoments("moments not realizable as a nonnegative table");
    table.p[o] = v;
  }
  return table;
}

/// Marginal p(V=+1), p(V=-1) of one variable within one context table.
template <class T>
std::array<T, 2> variable_marginal(const Scenario& scenario, const ContextTable<T>& table,
                                   int var) {
  const auto& ctx = scenario.contexts().at(table.context);
  int m = static_cast<int>(ctx.size());
  int j = -1;
  for (int k = 0; k < m; ++k)
    if (ctx[k] == var) j = k;
  if (j < 0) throw UnknownVariable("variable not in context");
  std::array<T, 2> marg{scalar_traits<T>::zero(), scalar_traits<T>::zero()};
  for (std::uint32_t o = 0; o < (std::uint32_t{1} << m); ++o)
    marg[outcome_sign(o, j, m) > 0 ? 0 : 1] += table.p[o];
  return marg;
}

struct NoSignalingEntry {
  int variable;
  int context_a, context_b;
  std::array<double, 2> marginal_a, marginal_b;  // p(+1), p(-1)
  double discrepancy;
};

struct NoSignalingReport {
  std::vector<NoSignalingEntry> entries;
  double max_discrepancy = 0.0;
  bool pass = true;
};

/// Compares each shared variable's marginal across every pair of contexts
/// containing it. A failing verdict is a result, not an error.
template <class T>
NoSignalingReport check_no_signaling(const Behavior<T>& behavior,
                                     double eps_ns = kDefaultNoSignalingTol) {
  using tr = scalar_traits<T>;
  NoSignalingReport report;
  for (int v = 0; v < behavior.scenario.variable_count(); ++v) {
    auto ctxs = behavior.scenario.contexts_of(v);
    for (std::size_t i = 0; i < ctxs.size(); ++i) {
      for (std::size_t j = i + 1; j < ctxs.size(); ++j) {
        auto ma = variable_marginal(behavior.scenario, behavior.table_for(ctxs[i]), v);
        auto mb = variable_marginal(behavior.scenario, behavior.table_for(ctxs[j]), v);
        NoSignalingEntry e;
        e.variable = v;
        e.context_a = ctxs[i];
        e.context_b = ctxs[j];
        e.marginal_a = {tr::to_double(ma[0]), tr::to_double(ma[1])};
        e.marginal_b = {tr::to_double(mb[0]), tr::to_double(mb[1])};
        e.discrepancy = std::max(std::fabs(e.marginal_a[0] - e.marginal_b[0]),
                                 std::fabs(e.marginal_a[1] - e.marginal_b[1]));
        report.max_discrepancy = std::max(report.max_discrepancy, e.discrepancy);
        report.entries.push_back(e);
      }
    }
  }
  report.pass = report.max_discrepancy <= eps_ns;
  return report;
}

/// Inferred roles for the 4-cycle CHSH scenario: contexts are exactly the
/// four cross pairs {X,Z},{X,W},{Y,Z},{Y,W}.
struct ChshRoles {
  int x, y, z, w;
};

inline ChshRoles infer_chsh_roles(const Scenario& scenario) {
  if (scenario.variable_count() != 4 || scenario.context_count() != 4)
    throw WrongScenarioShape("CHSH needs 4 variables in 4 two-variable contexts");
  for (const auto& ctx : scenario.contexts())
    if (ctx.size() != 2) throw WrongScenarioShape("CHSH contexts must have 2 variables");
  // partner sets: X is the lowest-index variable; it must appear in exactly
  // two contexts, its partners are {Z, W}; the remaining variable is Y.
  auto ctxs0 = scenario.contexts_of(0);
  if (ctxs0.size() != 2) throw WrongScenarioShape("context structure is not the 4-cycle");
  ChshRoles roles{};
  roles.x = 0;
  std::set<int> partners;
  for (int c : ctxs0)
    for (int v : scenario.contexts()[c])
      if (v != 0) partners.insert(v);
  if (partners.size() != 2) throw WrongScenarioShape("context structure is not the 4-cycle");
  auto it = partners.begin();
  roles.z = *it++;
  roles.w = *it;
  roles.y = -1;
  for (int v = 1; v < 4; ++v)
    if (!partners.count(v)) roles.y = v;
  if (roles.y < 0) throw WrongScenarioShape("context structure is not the 4-cycle");
  // the declared contexts must be exactly the four cross pairs
  std::set<std::set<int>> want{{roles.x, roles.z}, {roles.x, roles.w},
                               {roles.y, roles.z}, {roles.y, roles.w}};
  std::set<std::set<int>> have;
  for (const auto& ctx : scenario.contexts()) have.insert({ctx[0], ctx[1]});
  if (have != want) throw WrongScenarioShape("context structure is not the 4-cycle");
  return roles;
}

struct ChshResult {
  // values[2*m + (s?1:0)]: minus sign at position m of (XZ, XW, YZ, YW),
  // overall sign - when s.
  std::array<double, 8> values;
  double max_abs;
  ChshRoles roles;
};

/// Evaluates all 8 CHSH sign variants from the behavior's pair correlations.
template <class T>
ChshResult chsh_values(const Behavior<T>& behavior) {
  using tr = scalar_traits<T>;
  ChshRoles roles = infer_chsh_roles(behavior.scenario);
  auto pair_moment = [&](int a, int b) {
    for (const auto& table : behavior.tables) {
      const auto& ctx = behavior.scenario.contexts()[table.context];
      if ((ctx[0] == a && ctx[1] == b) || (ctx[0] == b && ctx[1] == a)) {
        auto moments = moments_from_table(behavior.scenario, table);
        std::vector<int> key{std::min(a, b), std::max(a, b)};
        return tr::to_double(moments.at(key));
      }
    }
    throw WrongScenarioShape("missing cross context");
  };
  std::array<double, 4> e = {pair_moment(roles.x, roles.z), pair_moment(roles.x, roles.w),
                             pair_moment(roles.y, roles.z), pair_moment(roles.y, roles.w)};
  ChshResult result;
  result.roles = roles;
  result.max_abs = 0.0;
  for (int m = 0; m < 4; ++m) {
    double v = 0.0;
    for (int i = 0; i < 4; ++i) v += (i == m ? -e[i] : e[i]);
    result.values[2 * m] = v;
    result.values[2 * m + 1] = -v;
    result.max_abs = std::max(result.max_abs, std::fabs(v));
  }
  return result;
}

}  // namespace sigmaq
