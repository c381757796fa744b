#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigmaq/behavior.hpp"
#include "sigmaq/errors.hpp"
#include "sigmaq/joint.hpp"
#include "sigmaq/ks.hpp"
#include "sigmaq/linear_system.hpp"
#include "sigmaq/rational.hpp"
#include "sigmaq/scenario.hpp"

namespace sigmaq {

using json = nlohmann::json;

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---- Scenario ----

inline json scenario_to_json(const Scenario& scenario) {
  json j;
  j["variables"] = scenario.variables();
  json ctxs = json::array();
  for (const auto& ctx : scenario.contexts()) {
    json names = json::array();
    for (int v : ctx) names.push_back(scenario.variables()[v]);
    ctxs.push_back(names);
  }
  j["contexts"] = ctxs;
  return j;
}

inline Scenario scenario_from_json(const json& j) {
  try {
    std::vector<std::string> variables = j.at("variables").get<std::vector<std::string>>();
    std::vector<std::vector<std::string>> contexts =
        j.at("contexts").get<std::vector<std::vector<std::string>>>();
    return Scenario::from_names(std::move(variables), contexts);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad scenario JSON: ") + e.what());
  }
}

// ---- Behavior ----

template <class T>
json behavior_to_json(const Behavior<T>& behavior) {
  json j;
  j["scenario"] = scenario_to_json(behavior.scenario);
  json tables = json::array();
  for (const auto& table : behavior.tables) {
    const auto& ctx = behavior.scenario.contexts()[table.context];
    json t;
    json names = json::array();
    for (int v : ctx) names.push_back(behavior.scenario.variables()[v]);
    t["context"] = names;
    json p = json::object();
    int m = static_cast<int>(ctx.size());
    for (std::uint32_t o = 0; o < (std::uint32_t{1} << m); ++o) {
      if constexpr (scalar_traits<T>::is_exact)
        p[outcome_label(o, m)] = to_string(table.p[o]);
      else
        p[outcome_label(o, m)] = table.p[o];
    }
    t["p"] = p;
    tables.push_back(t);
  }
  j["tables"] = tables;
  return j;
}

/// True when every table entry in the behavior JSON is a "num/den" string,
/// i.e. the exact-rational pipeline applies.
inline bool behavior_json_is_exact(const json& j) {
  if (!j.contains("tables") || !j["tables"].is_array()) return false;
  for (const auto& t : j["tables"]) {
    if (!t.contains("p") || !t["p"].is_object()) return false;
    for (const auto& [key, value] : t["p"].items()) {
      (void)key;
      if (!value.is_string()) return false;
    }
  }
  return true;
}

template <class T>
Behavior<T> behavior_from_json(const json& j) {
  try {
    Scenario scenario = scenario_from_json(j.at("scenario"));
    Behavior<T> behavior{scenario, {}};
    if (j.at("tables").size() != scenario.contexts().size())
      throw ParseError("behavior must have one table per context");
    behavior.tables.resize(scenario.contexts().size());
    std::vector<bool> seen(scenario.contexts().size(), false);
    for (const auto& t : j.at("tables")) {
      std::vector<int> ctx_vars;
      for (const auto& name : t.at("context")) ctx_vars.push_back(scenario.index_of(name));
      int context = -1;
      for (int c = 0; c < scenario.context_count(); ++c)
        if (scenario.contexts()[c] == ctx_vars) context = c;
      if (context < 0) throw ParseError("table context not declared in scenario");
      if (seen[context]) throw ParseError("duplicate table for a context");
      seen[context] = true;
      int m = static_cast<int>(ctx_vars.size());
      ContextTable<T> table;
      table.context = context;
      table.p.assign(std::size_t{1} << m, scalar_traits<T>::zero());
      const auto& p = t.at("p");
      if (p.size() != table.p.size()) throw ParseError("context table has wrong entry count");
      for (const auto& [key, value] : p.items()) {
        if (key.size() != static_cast<std::size_t>(m))
          throw ParseError("outcome key length mismatch: " + key);
        std::uint32_t o = outcome_from_label(key);
        if constexpr (scalar_traits<T>::is_exact) {
          if (!value.is_string()) throw ParseError("exact pipeline needs num/den strings");
          table.p[o] = rat_from_string(value.template get<std::string>());
        } else {
          if (value.is_string())
            table.p[o] = scalar_traits<double>::to_double(
                scalar_traits<Rat>::to_double(rat_from_string(value.template get<std::string>())));
          else
            table.p[o] = value.template get<double>();
        }
      }
      behavior.tables[context] = std::move(table);
    }
    behavior.validate();
    return behavior;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad behavior JSON: ") + e.what());
  }
}

// ---- Solutions ----

/// Solution JSON, floats rendered with 17 significant digits.
template <class T>
std::string solution_to_json_text(const AtomSpace& space, const SignedJoint<T>& joint,
                                  int family_dim) {
  std::string out = "{\"atoms\": [";
  for (std::uint32_t a = 0; a < space.size(); ++a) {
    if (a) out += ", ";
    out += "\"" + space.label(a) + "\"";
  }
  out += "], \"p\": [";
  for (std::uint32_t a = 0; a < space.size(); ++a) {
    if (a) out += ", ";
    if constexpr (scalar_traits<T>::is_exact)
      out += "\"" + to_string(joint.p[a]) + "\"";
    else
      out += format_double(joint.p[a]);
  }
  out += "], \"mass\": ";
  if constexpr (scalar_traits<T>::is_exact) {
    out += "\"" + to_string(joint.mass) + "\", \"delta\": \"" + to_string(joint.delta) + "\"";
  } else {
    out += format_double(joint.mass) + ", \"delta\": " + format_double(joint.delta);
  }
  out += ", \"family_dim\": " + std::to_string(family_dim) + "}";
  return out;
}

template <class T>
std::string solution_to_csv(const AtomSpace& space, const SignedJoint<T>& joint) {
  std::string out = "atom,p\n";
  for (std::uint32_t a = 0; a < space.size(); ++a) {
    out += space.label(a) + ",";
    if constexpr (scalar_traits<T>::is_exact)
      out += to_string(joint.p[a]);
    else
      out += format_double(joint.p[a]);
    out += "\n";
  }
  return out;
}

template <class T>
json family_to_json(const SolutionFamily<T>& family) {
  json j;
  j["dimension"] = family.dimension();
  auto vec = [](const std::vector<T>& v) {
    json arr = json::array();
    for (const T& x : v) {
      if constexpr (scalar_traits<T>::is_exact)
        arr.push_back(to_string(x));
      else
        arr.push_back(x);
    }
    return arr;
  };
  j["particular"] = vec(family.particular);
  json basis = json::array();
  for (const auto& b : family.nullspace) basis.push_back(vec(b));
  j["nullspace"] = basis;
  return j;
}

// ---- KS sets ----

inline json ks_to_json(const KSSet& ks) {
  json j;
  json vectors = json::array();
  for (const auto& v : ks.vectors) vectors.push_back(v.components);
  j["vectors"] = vectors;
  j["contexts"] = ks.contexts;
  return j;
}

inline KSSet ks_from_json(const json& j) {
  try {
    KSSet ks;
    for (const auto& comps : j.at("vectors"))
      ks.vectors.emplace_back(comps.get<std::vector<long long>>());
    ks.contexts = j.at("contexts").get<std::vector<std::vector<int>>>();
    for (const auto& ctx : ks.contexts)
      for (int i : ctx)
        if (i < 0 || i >= static_cast<int>(ks.vectors.size()))
          throw ParseError("context index out of range");
    return ks;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad KS set JSON: ") + e.what());
  }
}

inline json no_signaling_report_to_json(const Scenario& scenario,
                                        const NoSignalingReport& report) {
  json j;
  j["pass"] = report.pass;
  j["max_discrepancy"] = report.max_discrepancy;
  json entries = json::array();
  for (const auto& e : report.entries) {
    json entry;
    entry["variable"] = scenario.variables()[e.variable];
    entry["contexts"] = {e.context_a, e.context_b};
    entry["marginal_a"] = e.marginal_a;
    entry["marginal_b"] = e.marginal_b;
    entry["discrepancy"] = e.discrepancy;
    entries.push_back(entry);
  }
  j["entries"] = entries;
  return j;
}

}  // namespace sigmaq
