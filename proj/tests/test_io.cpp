#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "sigmaq/io.hpp"
#include "sigmaq/oracle.hpp"

using namespace sigmaq;

TEST_CASE("scenario JSON round trip") {
  auto sc = pr_box_scenario();
  auto j = scenario_to_json(sc);
  auto back = scenario_from_json(j);
  CHECK(back.variables() == sc.variables());
  CHECK(back.contexts() == sc.contexts());

  CHECK_THROWS_AS(scenario_from_json(json::object()), ParseError);
  CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"variables": 3, "contexts": []})")),
                  ParseError);
}

TEST_CASE("double behavior JSON round trip") {
  auto behavior = bell_behavior();
  auto j = behavior_to_json(behavior);
  CHECK_FALSE(behavior_json_is_exact(j));
  auto back = behavior_from_json<double>(j);
  for (int c = 0; c < 4; ++c)
    for (int o = 0; o < 4; ++o)
      CHECK(back.tables[c].p[o] == Catch::Approx(behavior.tables[c].p[o]).margin(1e-15));
}

TEST_CASE("exact behavior JSON round trip preserves rationals") {
  auto behavior = pr_box_behavior<Rat>();
  auto j = behavior_to_json(behavior);
  CHECK(behavior_json_is_exact(j));
  auto back = behavior_from_json<Rat>(j);
  for (int c = 0; c < 4; ++c)
    for (int o = 0; o < 4; ++o) CHECK(back.tables[c].p[o] == behavior.tables[c].p[o]);
  // the double pipeline can read the same file
  auto approx = behavior_from_json<double>(j);
  CHECK(approx.tables[0].p[0] == Catch::Approx(0.5));
}

TEST_CASE("behavior JSON validation") {
  auto good = behavior_to_json(bell_behavior());

  auto missing = good;
  missing["tables"].erase(3);
  CHECK_THROWS_AS(behavior_from_json<double>(missing), ParseError);

  auto dup = good;
  dup["tables"][3] = dup["tables"][0];
  CHECK_THROWS_AS(behavior_from_json<double>(dup), ParseError);

  auto badkey = good;
  badkey["tables"][0]["p"].erase("++");
  badkey["tables"][0]["p"]["+x"] = 0.25;
  CHECK_THROWS_AS(behavior_from_json<double>(badkey), ParseError);

  auto unnorm = good;
  unnorm["tables"][0]["p"]["++"] = 0.9;
  CHECK_THROWS_AS(behavior_from_json<double>(unnorm), ParseError);

  auto undeclared = good;
  undeclared["tables"][0]["context"] = {"A", "A'"};
  CHECK_THROWS_AS(behavior_from_json<double>(undeclared), ParseError);

  auto mixed = good;
  mixed["tables"][0]["p"]["++"] = "1/4";  // strings forbidden in exact mode only if not num/den
  CHECK_FALSE(behavior_json_is_exact(mixed));
  CHECK_THROWS_AS(behavior_from_json<Rat>(mixed), ParseError);  // others are numbers
}

TEST_CASE("rational string parsing") {
  CHECK(rat_from_string("1/2") == Rat(1, 2));
  CHECK(rat_from_string("-3/6") == Rat(-1, 2));
  CHECK(rat_from_string("7") == Rat(7));
  CHECK(to_string(Rat(-1, 2)) == "-1/2");
  CHECK(to_string(Rat(3)) == "3");
}

TEST_CASE("solution JSON carries full-precision values") {
  auto sys = assemble_constraints(bell_behavior());
  auto joint = solve_min_l1(sys);
  auto text = solution_to_json_text(sys.space, joint, 7);
  auto j = json::parse(text);
  CHECK(j["atoms"].size() == 16);
  CHECK(j["atoms"][0] == "++++");
  CHECK(j["atoms"][15] == "----");
  CHECK(j["p"].size() == 16);
  CHECK(j["family_dim"] == 7);
  double delta = j["delta"].get<double>();
  CHECK(delta == Catch::Approx(joint.delta).margin(1e-15));
  // 17 significant digits survive the round trip exactly
  CHECK(j["mass"].get<double>() == joint.mass);
}

TEST_CASE("exact solution JSON uses num/den strings") {
  auto sys = assemble_constraints(pr_box_behavior<Rat>());
  auto joint = solve_min_l1(sys);
  auto j = json::parse(solution_to_json_text(sys.space, joint, 7));
  CHECK(j["delta"] == "1");
  CHECK(j["mass"] == "2");
  for (const auto& v : j["p"]) CHECK(v.is_string());
}

TEST_CASE("CSV export lists one atom per row") {
  auto sys = assemble_constraints(bell_behavior());
  auto joint = solve_min_l1(sys);
  auto csv = solution_to_csv(sys.space, joint);
  CHECK(csv.rfind("atom,p\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
  CHECK(csv.find("++++,") != std::string::npos);
}

TEST_CASE("family JSON") {
  auto sys = assemble_constraints(bell_behavior());
  auto family = solve_family(sys);
  auto j = family_to_json(family);
  CHECK(j["dimension"] == 7);
  CHECK(j["particular"].size() == 16);
  CHECK(j["nullspace"].size() == 7);
}

TEST_CASE("KS set JSON round trip") {
  auto ks = cabello_set();
  auto j = ks_to_json(ks);
  auto back = ks_from_json(j);
  CHECK(back.vectors == ks.vectors);
  CHECK(back.contexts == ks.contexts);

  auto bad = j;
  bad["contexts"][0][0] = 99;
  CHECK_THROWS_AS(ks_from_json(bad), ParseError);
}

TEST_CASE("no-signaling report JSON") {
  auto behavior = bell_behavior();
  behavior.tables[0] = table_from_moments(0.5, 0.0, 0.5, 0);
  auto report = check_no_signaling(behavior);
  auto j = no_signaling_report_to_json(behavior.scenario, report);
  CHECK(j["pass"] == false);
  CHECK(j["max_discrepancy"].get<double>() == Catch::Approx(0.25));
  CHECK(j["entries"].size() == report.entries.size());
  CHECK(j["entries"][0]["variable"] == "A");
}
