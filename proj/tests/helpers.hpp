#pragma once

// Shared fixtures and independent oracles for the test suites. The closed-form
// solution families here are test-side oracles: they are evaluated directly
// from their published algebraic form and never go through the solver code
// they are used to check.

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "sigmaq/scenario.hpp"

namespace testutil {

/// Canonical atom index for an explicit sign pattern.
inline std::uint32_t atom_index(const sigmaq::AtomSpace& space, const std::vector<int>& signs) {
  int n = space.scenario().variable_count();
  std::uint32_t idx = 0;
  for (int i = 0; i < n; ++i)
    if (signs[i] < 0) idx |= std::uint32_t{1} << (n - 1 - i);
  return idx;
}

/// Three-variable cyclic scenario X,Y,Z with contexts (X,Y),(X,Z),(Y,Z).
inline sigmaq::Scenario triangle_scenario() {
  return sigmaq::Scenario::from_names({"X", "Y", "Z"}, {{"X", "Y"}, {"X", "Z"}, {"Y", "Z"}});
}

/// Closed-form one-parameter solution family of the three-variable cyclic
/// system, indexed by sign pattern (x, y, z).
inline std::map<std::array<int, 3>, double> triangle_family(double X, double Y, double Z,
                                                            double XY, double XZ, double YZ,
                                                            double alpha) {
  std::map<std::array<int, 3>, double> p;
  p[{+1, +1, +1}] = 0.25 * (1 + XY + XZ + YZ) - alpha;
  p[{-1, +1, +1}] = 0.25 * (Y + Z - XY - XZ) + alpha;
  p[{+1, -1, +1}] = 0.25 * (X + Z - XY - YZ) + alpha;
  p[{+1, +1, -1}] = 0.25 * (X + Y - XZ - YZ) + alpha;
  p[{+1, -1, -1}] = 0.25 * (1 - Y - Z + YZ) - alpha;
  p[{-1, +1, -1}] = 0.25 * (1 - X - Z + XZ) - alpha;
  p[{-1, -1, +1}] = 0.25 * (1 - X - Y + XY) - alpha;
  p[{-1, -1, -1}] = alpha;
  return p;
}

/// Closed-form seven-parameter solution family of the four-variable
/// cross-pair system with zero first moments, indexed by (x, y, z, w).
inline std::map<std::array<int, 4>, double> cross_family(double XZ, double XW, double YZ,
                                                         double YW,
                                                         const std::array<double, 7>& a) {
  auto [a1, a2, a3, a4, a5, a6, a7] = a;
  std::map<std::array<int, 4>, double> p;
  p[{+1, +1, +1, +1}] = a1;
  p[{+1, +1, +1, -1}] = a2;
  p[{+1, +1, -1, +1}] = a3;
  p[{+1, +1, -1, -1}] = a4;
  p[{+1, -1, +1, +1}] = a5;
  p[{+1, -1, +1, -1}] = 0.25 * (1 + XZ) - a1 - a2 - a5;
  p[{+1, -1, -1, +1}] = 0.25 * (1 + XW) - a1 - a3 - a5;
  p[{+1, -1, -1, -1}] = -0.25 * (XZ + XW) + a1 - a4 + a5;
  p[{-1, +1, +1, +1}] = 0.25 * (1 + YW) - a1 - a3 - a6;
  p[{-1, +1, +1, -1}] = 0.25 * (YZ - YW) - a2 + a6 + a3;
  p[{-1, +1, -1, +1}] = a6;
  p[{-1, +1, -1, -1}] = 0.25 * (1 - YZ) - a3 - a4 - a6;
  p[{-1, -1, +1, +1}] = -0.25 * (YW + XW) + a1 + a3 - a7;
  p[{-1, -1, +1, -1}] = 0.25 * (-XZ + XW - YZ + YW) + a2 - a3 + a7;
  p[{-1, -1, -1, +1}] = a7;
  p[{-1, -1, -1, -1}] = 0.25 * (XZ + YZ) + a3 + a4 - a7;
  return p;
}

/// cross_family as a vector in canonical atom order.
inline std::vector<double> cross_family_vector(const sigmaq::AtomSpace& space, double XZ,
                                               double XW, double YZ, double YW,
                                               const std::array<double, 7>& a) {
  auto p = cross_family(XZ, XW, YZ, YW, a);
  std::vector<double> v(space.size());
  for (const auto& [signs, value] : p)
    v[atom_index(space, {signs[0], signs[1], signs[2], signs[3]})] = value;
  return v;
}

/// Random cross-pair correlations realizable as nonnegative context tables
/// (any values in [-1,1] work with zero marginals).
inline std::vector<double> random_correlations(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  return {unit(rng), unit(rng), unit(rng), unit(rng)};
}

}  // namespace testutil
