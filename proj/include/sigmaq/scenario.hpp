#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sigmaq/errors.hpp"

namespace sigmaq {

// Atom spaces above this variable count are refused (2^24 atoms).
inline constexpr int kMaxVariables = 24;

/// A measurement scenario: named dichotomous (+1/-1) variables and the
/// declared contexts (subsets of jointly measurable variables).
class Scenario {
 public:
  Scenario(std::vector<std::string> variables, std::vector<std::vector<int>> contexts)
      : variables_(std::move(variables)), contexts_(std::move(contexts)) {
    validate();
  }

  /// Builds a scenario from contexts given as variable names.
  static Scenario from_names(std::vector<std::string> variables,
                             const std::vector<std::vector<std::string>>& context_names) {
    std::vector<std::vector<int>> contexts;
    contexts.reserve(context_names.size());
    for (const auto& ctx : context_names) {
      std::vector<int> indices;
      for (const auto& name : ctx) {
        auto it = std::find(variables.begin(), variables.end(), name);
        if (it == variables.end()) throw UnknownVariable("unknown variable: " + name);
        indices.push_back(static_cast<int>(it - variables.begin()));
      }
      contexts.push_back(std::move(indices));
    }
    return Scenario(std::move(variables), std::move(contexts));
  }

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<std::vector<int>>& contexts() const { return contexts_; }
  int variable_count() const { return static_cast<int>(variables_.size()); }
  int context_count() const { return static_cast<int>(contexts_.size()); }

  int index_of(const std::string& name) const {
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) throw UnknownVariable("unknown variable: " + name);
    return static_cast<int>(it - variables_.begin());
  }

  /// Contexts (by index) containing the given variable, in declaration order.
  std::vector<int> contexts_of(int var) const {
    std::vector<int> out;
    for (int c = 0; c < context_count(); ++c)
      if (std::find(contexts_[c].begin(), contexts_[c].end(), var) != contexts_[c].end())
        out.push_back(c);
    return out;
  }

  bool operator==(const Scenario&) const = default;

 private:
  void validate() const {
    if (variables_.empty()) throw InvalidScenario("scenario has no variables");
    std::set<std::string> seen;
    for (const auto& v : variables_) {
      if (v.empty()) throw InvalidScenario("empty variable name");
      if (!seen.insert(v).second) throw InvalidScenario("duplicate variable name: " + v);
    }
    std::vector<bool> used(variables_.size(), false);
    for (const auto& ctx : contexts_) {
      if (ctx.empty()) throw InvalidScenario("empty context");
      std::set<int> in_ctx;
      for (int i : ctx) {
        if (i < 0 || i >= variable_count()) throw InvalidScenario("context index out of range");
        if (!in_ctx.insert(i).second) throw InvalidScenario("duplicate variable in context");
        used[i] = true;
      }
    }
    for (int i = 0; i < variable_count(); ++i)
      if (!used[i])
        throw InvalidScenario("variable not in any context: " + variables_[i]);
  }

  std::vector<std::string> variables_;
  std::vector<std::vector<int>> contexts_;
};

/// One global outcome: a full +1/-1 sign assignment to all variables.
struct Atom {
  std::vector<int> signs;

  bool operator==(const Atom&) const = default;
};

/// A subset of the atom space, stored as sorted ascending atom indices.
struct Event {
  std::vector<std::uint32_t> atoms;

  bool operator==(const Event&) const = default;
};

/// The 2^n global outcomes in canonical order: lexicographic over variables in
/// declaration order, +1 before -1. Atom index bit (n-1-i) set means
/// variable i has sign -1.
class AtomSpace {
 public:
  explicit AtomSpace(Scenario scenario) : scenario_(std::move(scenario)) {
    if (scenario_.variable_count() > kMaxVariables)
      throw ScenarioTooLarge("scenario has more than 24 variables");
    size_ = std::uint32_t{1} << scenario_.variable_count();
  }

  const Scenario& scenario() const { return scenario_; }
  std::uint32_t size() const { return size_; }

  /// Sign of variable `var` in atom `index`.
  int sign(std::uint32_t index, int var) const {
    int n = scenario_.variable_count();
    return (index >> (n - 1 - var)) & 1u ? -1 : +1;
  }

  Atom atom(std::uint32_t index) const {
    int n = scenario_.variable_count();
    Atom a;
    a.signs.resize(n);
    for (int i = 0; i < n; ++i) a.signs[i] = sign(index, i);
    return a;
  }

  /// "+-+-" style label in variable declaration order.
  std::string label(std::uint32_t index) const {
    int n = scenario_.variable_count();
    std::string s(n, '+');
    for (int i = 0; i < n; ++i)
      if (sign(index, i) < 0) s[i] = '-';
    return s;
  }

 private:
  Scenario scenario_;
  std::uint32_t size_;
};

inline AtomSpace build_atom_space(const Scenario& scenario) { return AtomSpace(scenario); }

/// Atoms consistent with every assigned sign; 2^(n-k) of them for k assigned
/// variables. Assignment maps variable name to +1 or -1.
inline Event event_for_assignment(const AtomSpace& space,
                                  const std::map<std::string, int>& assignment) {
  int n = space.scenario().variable_count();
  std::uint32_t fixed_mask = 0, fixed_bits = 0;
  for (const auto& [name, sign] : assignment) {
    int var = space.scenario().index_of(name);
    std::uint32_t bit = std::uint32_t{1} << (n - 1 - var);
    fixed_mask |= bit;
    if (sign < 0) fixed_bits |= bit;
  }
  // enumerate the free bits directly
  std::vector<std::uint32_t> free_bits;
  for (int i = 0; i < n; ++i) {
    std::uint32_t bit = std::uint32_t{1} << i;
    if (!(fixed_mask & bit)) free_bits.push_back(bit);
  }
  Event ev;
  ev.atoms.reserve(std::size_t{1} << free_bits.size());
  for (std::uint32_t k = 0; k < (std::uint32_t{1} << free_bits.size()); ++k) {
    std::uint32_t idx = fixed_bits;
    for (std::size_t j = 0; j < free_bits.size(); ++j)
      if (k & (std::uint32_t{1} << j)) idx |= free_bits[j];
    ev.atoms.push_back(idx);
  }
  std::sort(ev.atoms.begin(), ev.atoms.end());
  return ev;
}

/// Joint-outcome event for a full context. The assigned variables must be
/// exactly one declared context (as a set).
inline Event product_event(const AtomSpace& space, const std::map<std::string, int>& assignment) {
  std::set<int> assigned;
  for (const auto& [name, sign] : assignment) {
    (void)sign;
    assigned.insert(space.scenario().index_of(name));
  }
  bool found = false;
  for (const auto& ctx : space.scenario().contexts()) {
    if (std::set<int>(ctx.begin(), ctx.end()) == assigned) {
      found = true;
      break;
    }
  }
  if (!found) throw NotAContext("assigned variables do not form a declared context");
  return event_for_assignment(space, assignment);
}

}  // namespace sigmaq
