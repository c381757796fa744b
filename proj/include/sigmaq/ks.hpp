#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigmaq/errors.hpp"

namespace sigmaq {

/// A ray given by integer components, identified up to overall sign.
/// Canonical representative: first nonzero component positive.
struct ProjectorVector {
  std::vector<long long> components;

  ProjectorVector() = default;
  ProjectorVector(std::initializer_list<long long> init) : components(init) { canonicalize(); }
  explicit ProjectorVector(std::vector<long long> comps) : components(std::move(comps)) {
    canonicalize();
  }

  void canonicalize() {
    bool all_zero = true;
    for (long long c : components) {
      if (c != 0) {
        all_zero = false;
        if (c < 0)
          for (auto& x : components) x = -x;
        break;
      }
    }
    if (all_zero || components.empty()) throw Error("zero projector vector");
  }

  long long dot(const ProjectorVector& other) const {
    long long s = 0;
    for (std::size_t i = 0; i < components.size(); ++i) s += components[i] * other.components[i];
    return s;
  }

  bool operator==(const ProjectorVector&) const = default;
  auto operator<=>(const ProjectorVector&) const = default;
};

/// Rays grouped into 4-element mutually orthogonal contexts.
struct KSSet {
  std::vector<ProjectorVector> vectors;
  std::vector<std::vector<int>> contexts;

  /// How many contexts each vector appears in.
  std::vector<int> multiplicities() const {
    std::vector<int> mult(vectors.size(), 0);
    for (const auto& ctx : contexts)
      for (int i : ctx) ++mult[i];
    return mult;
  }
};

/// 0/1 truth assignment, total on the vector set.
struct Valuation {
  std::vector<int> values;
};

/// The 18-ray, 9-context set in dimension 4.
inline KSSet cabello_set() {
  static const std::vector<std::vector<std::vector<long long>>> raw = {
      {{0, 0, 0, 1}, {0, 0, 1, 0}, {1, 1, 0, 0}, {1, -1, 0, 0}},
      {{0, 0, 0, 1}, {0, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, -1, 0}},
      {{1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, 0, 0}, {0, 0, 1, 1}},
      {{1, -1, 1, -1}, {1, 1, 1, 1}, {1, 0, -1, 0}, {0, 1, 0, -1}},
      {{0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 1}, {1, 0, 0, -1}},
      {{1, -1, -1, 1}, {1, 1, 1, 1}, {1, 0, 0, -1}, {0, 1, -1, 0}},
      {{1, 1, -1, 1}, {1, 1, 1, -1}, {1, -1, 0, 0}, {0, 0, 1, 1}},
      {{1, 1, -1, 1}, {-1, 1, 1, 1}, {1, 0, 1, 0}, {0, 1, 0, -1}},
      {{1, 1, 1, -1}, {-1, 1, 1, 1}, {1, 0, 0, 1}, {0, 1, -1, 0}}};
  KSSet ks;
  std::map<ProjectorVector, int> index;
  for (const auto& line : raw) {
    std::vector<int> ctx;
    for (const auto& comps : line) {
      ProjectorVector v{std::vector<long long>(comps)};
      auto [it, inserted] = index.emplace(v, static_cast<int>(ks.vectors.size()));
      if (inserted) ks.vectors.push_back(v);
      ctx.push_back(it->second);
    }
    ks.contexts.push_back(ctx);
  }
  return ks;
}

struct OrthogonalityReport {
  struct Failure {
    int context;
    int vector_a, vector_b;  // -1,-1 with dot 0 marks a rank failure
    long long dot;
  };
  std::vector<Failure> failures;
  bool pass = true;
};

namespace detail {
// exact rank of a small integer matrix via fraction-free elimination
inline int integer_rank(std::vector<std::vector<long long>> a) {
  int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(a[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (a[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    for (int i = rank + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      long long f1 = a[rank][col], f2 = a[i][col];
      for (int j = 0; j < cols; ++j) a[i][j] = a[i][j] * f1 - a[rank][j] * f2;
    }
    ++rank;
  }
  return rank;
}
}  // namespace detail

/// Checks every context: all pairwise integer dot products zero and the
/// vectors linearly independent (exact arithmetic throughout).
inline OrthogonalityReport verify_orthogonal_bases(const KSSet& ks) {
  OrthogonalityReport report;
  for (int c = 0; c < static_cast<int>(ks.contexts.size()); ++c) {
    const auto& ctx = ks.contexts[c];
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      for (std::size_t j = i + 1; j < ctx.size(); ++j) {
        long long d = ks.vectors[ctx[i]].dot(ks.vectors[ctx[j]]);
        if (d != 0) report.failures.push_back({c, ctx[i], ctx[j], d});
      }
    }
    std::vector<std::vector<long long>> mat;
    for (int i : ctx) mat.push_back(ks.vectors[i].components);
    if (detail::integer_rank(mat) != static_cast<int>(ctx.size()))
      report.failures.push_back({c, -1, -1, 0});
  }
  report.pass = report.failures.empty();
  return report;
}

/// The arithmetic obstruction: every ray appears an even number of times
/// while the context count is odd, so assigning exactly one 1 per context is
/// impossible.
inline bool parity_obstruction(const KSSet& ks) {
  if (ks.contexts.size() % 2 == 0) return false;
  for (int m : ks.multiplicities())
    if (m % 2 != 0) return false;
  return true;
}

namespace detail {
// Depth-first search over contexts, most-constrained-first, assigning the
// single 1 per context with forward checking. Candidate order is by vector
// index, so the first valuation found is the lowest-index one.
inline bool ks_search(const KSSet& ks, const std::vector<std::vector<int>>& order,
                      std::size_t depth, std::vector<int>& values) {
  if (depth == order.size()) return true;
  // pick the remaining context with the fewest open choices
  std::size_t best = depth;
  int best_open = 1 << 30;
  for (std::size_t k = depth; k < order.size(); ++k) {
    const auto& ctx = order[k];
    int ones = 0, open = 0;
    for (int i : ctx) {
      if (values[i] == 1) ++ones;
      if (values[i] == -1) ++open;
    }
    if (ones > 1) return false;
    if (ones == 0 && open == 0) return false;
    int choices = ones == 1 ? 1 : open;
    if (choices < best_open) {
      best_open = choices;
      best = k;
    }
  }
  auto order2 = order;
  std::swap(order2[depth], order2[best]);
  const auto& ctx = order2[depth];

  int ones = 0;
  for (int i : ctx)
    if (values[i] == 1) ++ones;
  std::vector<std::pair<int, int>> trail;
  auto set_value = [&](int i, int v) {
    trail.emplace_back(i, values[i]);
    values[i] = v;
  };
  auto undo = [&]() {
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) values[it->first] = it->second;
    trail.clear();
  };

  if (ones == 1) {
    for (int i : ctx)
      if (values[i] == -1) set_value(i, 0);
    if (ks_search(ks, order2, depth + 1, values)) return true;
    undo();
    return false;
  }
  for (int pick : ctx) {
    if (values[pick] != -1) continue;
    set_value(pick, 1);
    bool ok = true;
    for (int i : ctx) {
      if (i == pick) continue;
      if (values[i] == 1) ok = false;
      if (values[i] == -1) set_value(i, 0);
    }
    if (ok && ks_search(ks, order2, depth + 1, values)) return true;
    undo();
  }
  return false;
}
}  // namespace detail

/// Exhaustive search (with completeness-preserving pruning) for a 0/1
/// valuation with exactly one 1 per context. Returns none when no such
/// valuation exists.
inline std::optional<Valuation> search_noncontextual_valuation(const KSSet& ks) {
  if (ks.vectors.size() > 32)
    throw TooManyVectors("exhaustive search limited to 32 vectors");
  std::vector<int> values(ks.vectors.size(), -1);  // -1 = unassigned
  if (!detail::ks_search(ks, ks.contexts, 0, values)) return std::nullopt;
  Valuation val;
  val.values.resize(ks.vectors.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    val.values[i] = values[i] == 1 ? 1 : 0;  // vectors outside all contexts default to 0
  return val;
}

}  // namespace sigmaq
