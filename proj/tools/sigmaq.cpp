// sigmaq: decide whether per-context statistics admit a global nonnegative
// joint; if not, construct the minimal-L1 signed distribution and its
// contextuality index. Also audits Kochen-Specker vector sets.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sigmaq/behavior.hpp"
#include "sigmaq/io.hpp"
#include "sigmaq/joint.hpp"
#include "sigmaq/ks.hpp"
#include "sigmaq/linear_system.hpp"
#include "sigmaq/oracle.hpp"
#include "sigmaq/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitSignaling = 3;
constexpr int kExitInconsistent = 4;

double tolerance() {
  if (const char* env = std::getenv("SIGMAQ_TOL")) {
    try {
      return std::stod(env);
    } catch (...) {
      throw sigmaq::ParseError("SIGMAQ_TOL is not a number");
    }
  }
  return sigmaq::kDefaultNoSignalingTol;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw sigmaq::ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

sigmaq::json parse_json(const std::string& text) {
  sigmaq::json j = sigmaq::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw sigmaq::ParseError("input is not valid JSON");
  return j;
}

int cmd_validate(const std::string& file) {
  auto j = parse_json(read_input(file));
  auto behavior = sigmaq::behavior_from_json<double>(j);
  auto report = sigmaq::check_no_signaling(behavior, tolerance());
  std::cout << sigmaq::no_signaling_report_to_json(behavior.scenario, report).dump(2) << "\n";
  return report.pass ? kExitOk : kExitSignaling;
}

template <class T>
int solve_one(const sigmaq::json& j, bool with_family, bool csv, std::ostream& out) {
  auto behavior = sigmaq::behavior_from_json<T>(j);
  auto system = sigmaq::assemble_constraints(behavior, tolerance());
  auto family = sigmaq::solve_family(system);
  auto joint = sigmaq::solve_min_l1(system);
  out << sigmaq::solution_to_json_text(system.space, joint, family.dimension()) << "\n";
  if (with_family) out << sigmaq::family_to_json(family).dump(2) << "\n";
  if (csv) out << sigmaq::solution_to_csv(system.space, joint);
  return kExitOk;
}

int cmd_solve(const std::string& file, bool exact, bool with_family, bool csv,
              const std::string& batch_dir) {
  if (!batch_dir.empty()) {
    namespace fs = std::filesystem;
    for (const auto& entry : fs::directory_iterator(batch_dir)) {
      if (entry.path().extension() != ".json") continue;
      auto j = parse_json(read_input(entry.path().string()));
      std::cout << "{\"input\": \"" << entry.path().filename().string() << "\", \"result\": ";
      std::ostringstream one;
      if (exact || sigmaq::behavior_json_is_exact(j))
        solve_one<sigmaq::Rat>(j, false, false, one);
      else
        solve_one<double>(j, false, false, one);
      std::string text = one.str();
      while (!text.empty() && (text.back() == '\n')) text.pop_back();
      std::cout << text << "}\n";
    }
    return kExitOk;
  }
  auto j = parse_json(read_input(file));
  if (exact || sigmaq::behavior_json_is_exact(j))
    return solve_one<sigmaq::Rat>(j, with_family, csv, std::cout);
  return solve_one<double>(j, with_family, csv, std::cout);
}

int cmd_chsh(const std::string& file) {
  auto j = parse_json(read_input(file));
  auto behavior = sigmaq::behavior_from_json<double>(j);
  auto result = sigmaq::chsh_values(behavior);
  sigmaq::json out;
  const auto& vars = behavior.scenario.variables();
  out["roles"] = {{"X", vars[result.roles.x]},
                  {"Y", vars[result.roles.y]},
                  {"Z", vars[result.roles.z]},
                  {"W", vars[result.roles.w]}};
  sigmaq::json variants = sigmaq::json::array();
  static const char* kTerm[4] = {"XZ", "XW", "YZ", "YW"};
  for (int m = 0; m < 4; ++m) {
    for (int s = 0; s < 2; ++s) {
      sigmaq::json v;
      std::string expr;
      for (int i = 0; i < 4; ++i) {
        bool minus = (i == m) != (s == 1);
        expr += (minus ? "-" : (i ? "+" : "")) + std::string("<") + kTerm[i] + ">";
      }
      v["expression"] = expr;
      v["value"] = result.values[2 * m + s];
      variants.push_back(v);
    }
  }
  out["variants"] = variants;
  out["max_abs"] = result.max_abs;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_ks(const std::string& file) {
  sigmaq::KSSet ks;
  if (file.empty())
    ks = sigmaq::cabello_set();
  else
    ks = sigmaq::ks_from_json(parse_json(read_input(file)));

  std::cout << "KS set: " << ks.vectors.size() << " vectors, " << ks.contexts.size()
            << " contexts\n";
  auto ortho = sigmaq::verify_orthogonal_bases(ks);
  if (ortho.pass) {
    std::cout << "orthogonality: PASS (all pairwise dot products zero, all contexts full rank)\n";
  } else {
    std::cout << "orthogonality: FAIL\n";
    for (const auto& f : ortho.failures) {
      if (f.vector_a >= 0)
        std::cout << "  context " << f.context << ": vectors " << f.vector_a << "," << f.vector_b
                  << " have dot product " << f.dot << "\n";
      else
        std::cout << "  context " << f.context << ": vectors are linearly dependent\n";
    }
  }
  auto mult = ks.multiplicities();
  bool all_even = true;
  for (int m : mult) all_even = all_even && (m % 2 == 0);
  std::cout << "vector multiplicities: " << (all_even ? "all even" : "not all even")
            << "; contexts: " << ks.contexts.size()
            << (ks.contexts.size() % 2 ? " (odd)" : " (even)") << "\n";
  bool parity = sigmaq::parity_obstruction(ks);
  std::cout << "parity obstruction: " << (parity ? "YES" : "no") << "\n";
  auto valuation = sigmaq::search_noncontextual_valuation(ks);
  if (valuation) {
    std::cout << "noncontextual valuation: FOUND [";
    for (std::size_t i = 0; i < valuation->values.size(); ++i)
      std::cout << (i ? "," : "") << valuation->values[i];
    std::cout << "]\n";
  } else {
    std::cout << "noncontextual valuation: UNSAT (exhaustive search)\n";
  }
  return kExitOk;
}

int cmd_generate(const std::string& kind, const std::vector<double>& biases, bool exact) {
  if (kind == "bell") {
    std::cout << sigmaq::behavior_to_json(sigmaq::bell_behavior()).dump(2) << "\n";
  } else if (kind == "prbox") {
    if (exact)
      std::cout << sigmaq::behavior_to_json(sigmaq::pr_box_behavior<sigmaq::Rat>()).dump(2)
                << "\n";
    else
      std::cout << sigmaq::behavior_to_json(sigmaq::pr_box_behavior<double>()).dump(2) << "\n";
  } else if (kind == "product") {
    std::vector<double> b = biases;
    if (b.empty()) b.assign(4, 0.0);
    auto scenario = b.size() == 4 ? sigmaq::pr_box_scenario()
                                  : throw sigmaq::ParseError("product generator needs 4 biases");
    std::cout << sigmaq::behavior_to_json(sigmaq::product_behavior<double>(scenario, b)).dump(2)
              << "\n";
  } else {
    throw sigmaq::ParseError("unknown kind: " + kind);
  }
  return kExitOk;
}

// randomized consistency sweep; used by the test suite and for quick field
// checks of a build
int cmd_selftest(unsigned seed, int iterations) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  int failures = 0;
  auto scenario = sigmaq::pr_box_scenario();
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> biases(4);
    for (auto& b : biases) b = unit(rng);
    auto behavior = sigmaq::product_behavior<double>(scenario, biases);
    auto system = sigmaq::assemble_constraints(behavior);
    auto joint = sigmaq::solve_min_l1(system);
    bool feasible = sigmaq::nonneg_feasible(system);
    if (joint.delta > sigmaq::kDefaultDeltaTol || !feasible) {
      ++failures;
      std::cout << "FAIL product draw " << it << ": delta=" << joint.delta << "\n";
    }
  }
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> angles(4);
    for (auto& a : angles) a = unit(rng) * 180.0;
    auto behavior = sigmaq::singlet_behavior(angles[0], angles[1], angles[2], angles[3]);
    auto chsh = sigmaq::chsh_values(behavior);
    if (chsh.max_abs > 2.0 * std::sqrt(2.0) + 1e-9) {
      ++failures;
      std::cout << "FAIL singlet draw " << it << ": chsh=" << chsh.max_abs << "\n";
    }
  }
  std::cout << (failures == 0 ? "selftest OK" : "selftest FAILED") << " (" << 2 * iterations
            << " draws)\n";
  return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signed-probability contextuality solver"};
  app.require_subcommand(1);

  std::string file;
  bool exact = false, with_family = false, csv = false;
  std::string batch_dir;
  std::string kind;
  std::vector<double> biases;
  unsigned seed = 12345;
  int iterations = 50;

  auto* validate = app.add_subcommand("validate", "check a behavior for no-signaling");
  validate->add_option("file", file, "behavior JSON (default: stdin)");

  auto* solve = app.add_subcommand("solve", "minimal-L1 signed joint and contextuality index");
  solve->add_option("file", file, "behavior JSON (default: stdin)");
  solve->add_flag("--exact", exact, "force the exact-rational pipeline");
  solve->add_flag("--family", with_family, "also print the affine solution family");
  solve->add_flag("--csv", csv, "also print the atom table as CSV");
  solve->add_option("--batch", batch_dir, "process every .json file in a directory");

  auto* chsh = app.add_subcommand("chsh", "evaluate all 8 CHSH sign variants");
  chsh->add_option("file", file, "behavior JSON (default: stdin)");

  auto* ks = app.add_subcommand("ks", "Kochen-Specker obstruction report");
  ks->add_option("file", file, "KS set JSON (default: bundled 18-vector set)");

  auto* generate = app.add_subcommand("generate", "emit a canonical behavior");
  generate->add_option("--kind", kind, "bell | prbox | product")->required();
  generate->add_option("--biases", biases, "per-variable first moments (product kind)");
  generate->add_flag("--exact", exact, "emit rational entries where possible");

  auto* selftest = app.add_subcommand("selftest", "randomized consistency sweep");
  selftest->add_option("--seed", seed, "RNG seed");
  selftest->add_option("--iterations", iterations, "draws per property");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(file);
    if (solve->parsed()) return cmd_solve(file, exact, with_family, csv, batch_dir);
    if (chsh->parsed()) return cmd_chsh(file);
    if (ks->parsed()) return cmd_ks(file);
    if (generate->parsed()) return cmd_generate(kind, biases, exact);
    if (selftest->parsed()) return cmd_selftest(seed, iterations);
  } catch (const sigmaq::SignalingDetected& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSignaling;
  } catch (const sigmaq::InconsistentSystem& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const sigmaq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
