#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "sigmaq/joint.hpp"
#include "sigmaq/linear_system.hpp"
#include "sigmaq/oracle.hpp"

using namespace sigmaq;

TEST_CASE("singlet correlation is the sine of the angle difference") {
  CHECK(singlet_correlation({0.0, 0.0}) == Catch::Approx(0.0).margin(1e-15));
  CHECK(singlet_correlation({90.0, 0.0}) == Catch::Approx(1.0));
  CHECK(singlet_correlation({0.0, 90.0}) == Catch::Approx(-1.0));
  CHECK(singlet_correlation({45.0, 0.0}) == Catch::Approx(std::sqrt(0.5)));
  CHECK(singlet_correlation({30.0, 0.0}) == Catch::Approx(0.5));
}

TEST_CASE("built-in scenarios have the 4-cycle shape") {
  for (const auto& sc : {bell_scenario(), pr_box_scenario()}) {
    CHECK(sc.variable_count() == 4);
    CHECK(sc.context_count() == 4);
    CHECK_NOTHROW(infer_chsh_roles(sc));
  }
}

TEST_CASE("cross-pair behaviors carry the requested correlations") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> corr{unit(rng), unit(rng), unit(rng), unit(rng)};
    auto behavior = cross_pair_behavior<double>(pr_box_scenario(), corr);
    behavior.validate();
    for (int c = 0; c < 4; ++c) {
      auto m = moments_from_table(behavior.scenario, behavior.tables[c]);
      const auto& ctx = behavior.scenario.contexts()[c];
      CHECK(m.at({ctx[0]}) == Catch::Approx(0.0).margin(1e-12));
      CHECK(m.at({ctx[1]}) == Catch::Approx(0.0).margin(1e-12));
      std::vector<int> key{std::min(ctx[0], ctx[1]), std::max(ctx[0], ctx[1])};
      CHECK(m.at(key) == Catch::Approx(corr[c]).margin(1e-12));
    }
  }
}

TEST_CASE("the quantum 4-cycle behavior correlations") {
  auto behavior = bell_behavior();
  behavior.validate();
  double s = 1.0 / std::sqrt(2.0);
  auto m0 = moments_from_table(behavior.scenario, behavior.tables[0]);
  CHECK(m0.at({0, 2}) == Catch::Approx(s));
  auto m3 = moments_from_table(behavior.scenario, behavior.tables[3]);
  CHECK(m3.at({1, 3}) == Catch::Approx(-s));
}

TEST_CASE("the extremal box is exact in rational arithmetic") {
  auto behavior = pr_box_behavior<Rat>();
  behavior.validate();
  for (int c = 0; c < 4; ++c) {
    for (const Rat& w : behavior.tables[c].p)
      CHECK((w == Rat(0) || w == Rat(1, 2)));
  }
}

TEST_CASE("product behaviors factorize and admit the product joint") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> unit(-0.9, 0.9);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> biases{unit(rng), unit(rng), unit(rng), unit(rng)};
    auto behavior = product_behavior<double>(pr_box_scenario(), biases);
    behavior.validate();
    auto joint = product_joint(behavior.scenario, biases);
    double total = 0;
    for (double w : joint) {
      CHECK(w >= 0.0);
      total += w;
    }
    CHECK(total == Catch::Approx(1.0).margin(1e-12));
    // marginalizing the product joint onto each context gives its table
    AtomSpace space(behavior.scenario);
    SignedJoint<double> sj{joint, 1.0, 0.0};
    for (const auto& table : behavior.tables) {
      auto marg = marginalize(space, sj, behavior.scenario.contexts()[table.context]);
      for (std::size_t o = 0; o < table.p.size(); ++o)
        CHECK(marg.p[o] == Catch::Approx(table.p[o]).margin(1e-12));
    }
  }
}

TEST_CASE("product behavior rejects bad bias vectors") {
  CHECK_THROWS_AS(product_behavior<double>(pr_box_scenario(), {0.0, 0.0}), BiasOutOfRange);
  CHECK_THROWS_AS(product_behavior<double>(pr_box_scenario(), {0.0, 0.0, 0.0, 1.5}),
                  BiasOutOfRange);
}

TEST_CASE("singlet behaviors are no-signaling and bounded by Tsirelson") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> angle(0.0, 360.0);
  double best = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto behavior = singlet_behavior(angle(rng), angle(rng), angle(rng), angle(rng));
    behavior.validate();
    CHECK(check_no_signaling(behavior).pass);
    best = std::max(best, chsh_values(behavior).max_abs);
  }
  CHECK(best <= 2.0 * std::sqrt(2.0) + 1e-9);
  // the optimal angles reach the bound
  auto opt = singlet_behavior(0.0, 90.0, 45.0, 135.0);
  CHECK(chsh_values(opt).max_abs == Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-12));
}
