#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "sigmaq/behavior.hpp"
#include "sigmaq/errors.hpp"
#include "sigmaq/scenario.hpp"

namespace sigmaq {

/// Detector angle pair, in degrees.
struct AngleSetting {
  double theta1;
  double theta2;
};

/// Singlet-state pair correlation E = sin(theta1 - theta2); the accompanying
/// single-variable marginals are zero.
inline double singlet_correlation(const AngleSetting& setting) {
  return std::sin((setting.theta1 - setting.theta2) * std::numbers::pi / 180.0);
}

inline Scenario bell_scenario() {
  return Scenario::from_names({"A", "A'", "B", "B'"},
                              {{"A", "B"}, {"A", "B'"}, {"A'", "B"}, {"A'", "B'"}});
}

inline Scenario pr_box_scenario() {
  return Scenario::from_names({"X", "Y", "Z", "W"},
                              {{"X", "Z"}, {"X", "W"}, {"Y", "Z"}, {"Y", "W"}});
}

/// 4-cycle behavior with zero marginals and the given pair correlations,
/// one per context in declaration order.
template <class T>
Behavior<T> cross_pair_behavior(const Scenario& scenario, const std::vector<T>& correlations) {
  using tr = scalar_traits<T>;
  Behavior<T> behavior{scenario, {}};
  for (int c = 0; c < scenario.context_count(); ++c) {
    auto table = table_from_moments(tr::zero(), tr::zero(), correlations.at(c), c);
    behavior.tables.push_back(std::move(table));
  }
  return behavior;
}

/// The Bell-EPR behavior: zero first moments, pair correlations
/// (1/sqrt2, 1/sqrt2, 1/sqrt2, -1/sqrt2) on contexts (A,B),(A,B'),(A',B),(A',B').
inline Behavior<double> bell_behavior() {
  double s = 1.0 / std::sqrt(2.0);
  return cross_pair_behavior<double>(bell_scenario(), {s, s, s, -s});
}

/// The PR box: <XZ> = 1, <XW> = <YZ> = <YW> = -1, zero marginals.
template <class T = double>
Behavior<T> pr_box_behavior() {
  using tr = scalar_traits<T>;
  return cross_pair_behavior<T>(
      pr_box_scenario(), {tr::one(), -tr::one(), -tr::one(), -tr::one()});
}

/// Independent +-1 variables with the given first moments; every context
/// table is the corresponding product distribution.
template <class T>
Behavior<T> product_behavior(const Scenario& scenario, const std::vector<T>& biases) {
  using tr = scalar_traits<T>;
  if (static_cast<int>(biases.size()) != scenario.variable_count())
    throw BiasOutOfRange("need one bias per variable");
  for (const T& b : biases)
    if (tr::to_double(b) < -1.0 || tr::to_double(b) > 1.0)
      throw BiasOutOfRange("bias outside [-1, 1]");
  T half = tr::one() / tr::from_int(2);
  Behavior<T> behavior{scenario, {}};
  for (int c = 0; c < scenario.context_count(); ++c) {
    const auto& ctx = scenario.contexts()[c];
    int m = static_cast<int>(ctx.size());
    ContextTable<T> table;
    table.context = c;
    table.p.resize(std::size_t{1} << m);
    for (std::uint32_t o = 0; o < (std::uint32_t{1} << m); ++o) {
      T w = tr::one();
      for (int j = 0; j < m; ++j) {
        int s = outcome_sign(o, j, m);
        w *= (tr::one() + tr::from_int(s) * biases[ctx[j]]) * half;
      }
      table.p[o] = w;
    }
    behavior.tables.push_back(std::move(table));
  }
  return behavior;
}

/// The global product joint the product behavior admits, in canonical atom
/// order.
template <class T>
std::vector<T> product_joint(const Scenario& scenario, const std::vector<T>& biases) {
  using tr = scalar_traits<T>;
  AtomSpace space(scenario);
  T half = tr::one() / tr::from_int(2);
  std::vector<T> joint(space.size());
  for (std::uint32_t a = 0; a < space.size(); ++a) {
    T w = tr::one();
    for (int v = 0; v < scenario.variable_count(); ++v)
      w *= (tr::one() + tr::from_int(space.sign(a, v)) * biases[v]) * half;
    joint[a] = w;
  }
  return joint;
}

/// Behavior generated by measuring the singlet state at the given detector
/// angles (degrees): X at a1 or a2, paired with Z at b1 or b2.
inline Behavior<double> singlet_behavior(double a1, double a2, double b1, double b2) {
  return cross_pair_behavior<double>(
      pr_box_scenario(), {singlet_correlation({a1, b1}), singlet_correlation({a1, b2}),
                          singlet_correlation({a2, b1}), singlet_correlation({a2, b2})});
}

}  // namespace sigmaq
