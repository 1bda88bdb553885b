#include "ocs/randomization.hpp"

#include "ocs/model_io.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

using namespace ocs;
using ocs::testing::frac;
using ocs::testing::model_path;
using ocs::testing::square_system;

TEST_CASE("fair_randomizer lays out arms over the product of images") {
  RandomizerSpec one = fair_randomizer({{"X", {0, 1}}});
  CHECK(one.space->label() == "randomizer(X)");
  REQUIRE(one.space->size() == 2);
  CHECK(one.space->atom(0).id == "r0");
  CHECK(one.space->atom(1).id == "r1");
  CHECK(one.space->atom(0).mass == frac(1, 2));
  CHECK(one.arm_for("X").values() == std::vector<std::int64_t>{0, 1});
  CHECK_THROWS_AS(one.arm_for("Q"), UnknownVariable);

  RandomizerSpec joint = fair_randomizer({{"X", {0, 1}}, {"Z", {0, 1}}});
  REQUIRE(joint.space->size() == 4);
  CHECK(joint.space->atom(0).id == "r00");
  CHECK(joint.space->atom(3).id == "r11");
  CHECK(joint.space->atom(1).mass == frac(1, 4));
  CHECK(joint.arm_for("X").values() == std::vector<std::int64_t>{0, 0, 1, 1});
  CHECK(joint.arm_for("Z").values() == std::vector<std::int64_t>{0, 1, 0, 1});

  RandomizerSpec wide = fair_randomizer({{"T", {0, 1, 2}}});
  REQUIRE(wide.space->size() == 3);
  CHECK(wide.space->atom(2).id == "r2");
  CHECK(wide.space->atom(2).mass == frac(1, 3));

  CHECK_THROWS_AS(fair_randomizer({}), UnknownVariable);
  CHECK_THROWS_AS(fair_randomizer({{"X", {}}}), ImageMismatch);
}

TEST_CASE("coin_randomizer rejects degenerate probabilities") {
  RandomizerSpec coin = coin_randomizer("X", frac(1, 3));
  CHECK(coin.space->atom(0).mass == frac(2, 3));
  CHECK(coin.space->atom(1).mass == frac(1, 3));
  CHECK(coin.arm_for("X").values() == std::vector<std::int64_t>{0, 1});

  CHECK_THROWS_AS(coin_randomizer("X", Rational(0)), DegenerateRandomizer);
  CHECK_THROWS_AS(coin_randomizer("X", Rational(1)), DegenerateRandomizer);
  CHECK_THROWS_AS(coin_randomizer("X", frac(5, 4)), DegenerateRandomizer);
  CHECK_THROWS_AS(coin_randomizer("X", frac(-1, 3)), DegenerateRandomizer);
}

TEST_CASE("randomize infers the target and synthesizes the outcome pointwise") {
  ObservableCausalSystem sys = square_system();
  RandomizedSystem rs = randomize(sys, "X", fair_randomizer({{"X", {0, 1}}}));

  CHECK(rs.target_name == "Y");
  CHECK(rs.treatment_names == std::vector<std::string>{"X"});
  CHECK(rs.prod.left.get() == sys.space().get());
  REQUIRE(rs.prod.space->size() == 8);
  CHECK(rs.prod.space->atom(0).id == "A⊗r0");
  CHECK(rs.prod.space->atom(0).mass == frac(3, 16));

  CHECK(rs.treatments[0].values() == std::vector<std::int64_t>{0, 1, 0, 1, 0, 1, 0, 1});
  // each point realizes the member the coin picked: Y{X=0} = (0,0,1,0),
  // Y{X=1} = (1,0,0,0) on A,B,C,D
  CHECK(rs.outcome.values() == std::vector<std::int64_t>{0, 1, 0, 0, 1, 0, 0, 0});
  CHECK(rs.outcome.name() == "Y");

  REQUIRE(rs.lifted_members.size() == 2);
  CHECK(rs.lifted_members[0].values() == std::vector<std::int64_t>{0, 0, 0, 0, 1, 1, 0, 0});
  CHECK(rs.lifted_members[1].values() == std::vector<std::int64_t>{1, 1, 0, 0, 0, 0, 0, 0});

  // the coin is a fresh source of noise: assignment is independent of every
  // potential outcome
  CHECK(independent(rs.treatments[0], rs.lifted_members[0]));
  CHECK(independent(rs.treatments[0], rs.lifted_members[1]));
}

TEST_CASE("the randomization identity holds arm by arm, exactly") {
  ModelDocument doc = parse_model_file(model_path("po_effect.json"));
  REQUIRE(doc.system);
  RandomizedSystem rs = randomize(*doc.system, "X", fair_randomizer({{"X", {0, 1}}}));

  RandomizationCheck check = verify_randomization_identity(rs);
  CHECK(check.all_equal);
  REQUIRE(check.arms.size() == 2);
  CHECK(check.arms[0].arm == Assignment({{"X", 0}}));
  CHECK(check.arms[1].arm == Assignment({{"X", 1}}));
  for (const ArmCheck& arm : check.arms) {
    CHECK(arm.equal);
    CHECK(same_entries(arm.randomized, arm.source));
  }
  CHECK(check.arms[0].randomized.prob({1}) == frac(5, 8));
  CHECK(check.arms[1].randomized.prob({1}) == frac(3, 8));
}

TEST_CASE("observed and causal contrasts coincide under randomization") {
  const std::vector<std::pair<std::string, Rational>> cases = {
      {"po_null.json", Rational(0)},
      {"po_effect.json", frac(-1, 4)},
      {"po_canceling.json", Rational(0)},
  };
  const std::vector<RandomizerSpec> coins = {fair_randomizer({{"X", {0, 1}}}),
                                             coin_randomizer("X", frac(1, 3))};
  for (const auto& [file, expected_ace] : cases) {
    ModelDocument doc = parse_model_file(model_path(file));
    REQUIRE(doc.system);
    CHECK(ace(*doc.system, "X", "Y") == expected_ace);
    for (const RandomizerSpec& coin : coins) {
      RandomizedSystem rs = randomize(*doc.system, "X", coin);
      CHECK(verify_randomization_identity(rs).all_equal);
      CHECK(aoe(rs.treatments[0], rs.outcome) == expected_ace);
    }
  }
}

TEST_CASE("degenerate and mismatched randomizers are rejected") {
  ObservableCausalSystem sys = square_system();

  RandomizerSpec sure;
  sure.space = FiniteProbabilitySpace::make(
      "sure", {Atom{"r0", Rational(1)}, Atom{"r1", Rational(0)}});
  sure.arms.emplace_back("X", sure.space, std::vector<std::int64_t>{0, 1});
  CHECK_THROWS_AS(randomize(sys, "X", sure), DegenerateRandomizer);

  RandomizerSpec stuck;
  stuck.space = FiniteProbabilitySpace::make(
      "stuck", {Atom{"r0", frac(1, 2)}, Atom{"r1", frac(1, 2)}});
  stuck.arms.emplace_back("X", stuck.space, std::vector<std::int64_t>{0, 0});
  CHECK_THROWS_WITH_AS(randomize(sys, "X", stuck),
                       "randomizer arm for 'X' never takes the value 1", ImageMismatch);

  CHECK_THROWS_AS(randomize(sys, "Q", fair_randomizer({{"Q", {0, 1}}})), UnknownVariable);
  CHECK_THROWS_AS(joint_randomize(sys, {"X", "X"}, "Y", fair_randomizer({{"X", {0, 1}}})),
                  NameMismatch);
  CHECK_THROWS_AS(randomize(sys, "X", "X", fair_randomizer({{"X", {0, 1}}})), UnknownTarget);
  CHECK_THROWS_AS(randomize(sys, "X", "Q", fair_randomizer({{"X", {0, 1}}})), UnknownTarget);
}

TEST_CASE("target inference fails loudly when several candidates remain") {
  ModelDocument doc = parse_model_file(model_path("quadrants_joint.json"));
  REQUIRE(doc.system);
  CHECK_THROWS_WITH_AS(randomize(*doc.system, "X", fair_randomizer({{"X", {0, 1}}})),
                       "several non-treatment observables; pass the target explicitly",
                       UnknownTarget);
  RandomizedSystem rs =
      randomize(*doc.system, "X", "Y", fair_randomizer({{"X", {0, 1}}}));
  CHECK(rs.target_name == "Y");
}

TEST_CASE("a randomizer arm may take values outside the treatment image") {
  ObservableCausalSystem sys = square_system();
  RandomizedSystem rs = randomize(sys, "X", fair_randomizer({{"X", {0, 1, 2}}}));
  REQUIRE(rs.prod.space->size() == 12);
  // arm value 2 selects no family member; the outcome is an empty sum there
  for (std::size_t k = 0; k < rs.prod.space->size(); ++k) {
    if (rs.treatments[0].value(k) == 2) CHECK(rs.outcome.value(k) == 0);
  }
  RandomizationCheck check = verify_randomization_identity(rs);
  CHECK(check.all_equal);
  CHECK(check.arms.size() == 2);  // only the family's own assignments are checked
}

TEST_CASE("joint randomization canonicalizes order and equalizes every arm") {
  ModelDocument doc = parse_model_file(model_path("quadrants_joint.json"));
  REQUIRE(doc.system);

  RandomizedSystem rs =
      joint_randomize(*doc.system, {"Z", "X"}, fair_randomizer({{"X", {0, 1}}, {"Z", {0, 1}}}));
  CHECK(rs.treatment_names == std::vector<std::string>{"X", "Z"});
  CHECK(rs.target_name == "Y");
  CHECK(rs.prod.space->size() == 16);

  RandomizationCheck fair_check = verify_randomization_identity(rs);
  CHECK(fair_check.all_equal);
  REQUIRE(fair_check.arms.size() == 4);
  for (const ArmCheck& arm : fair_check.arms) {
    CHECK(arm.randomized.prob({1}) == frac(1, 4));
  }

  // correlated assignment of the two treatments is still a valid experiment
  RandomizerSpec corr = parse_randomizer_file(model_path("randomizers/correlated_pair.json"));
  RandomizationCheck corr_check =
      verify_randomization_identity(joint_randomize(*doc.system, {"X", "Z"}, corr));
  CHECK(corr_check.all_equal);
  for (const ArmCheck& arm : corr_check.arms) {
    CHECK(arm.randomized.prob({1}) == frac(1, 4));
  }

  RandomizerSpec skewed;
  skewed.space = FiniteProbabilitySpace::make(
      "skewed", {Atom{"r00", frac(1, 2)}, Atom{"r11", frac(1, 2)}});
  skewed.arms.emplace_back("X", skewed.space, std::vector<std::int64_t>{0, 1});
  skewed.arms.emplace_back("Z", skewed.space, std::vector<std::int64_t>{0, 1});
  CHECK_THROWS_AS(joint_randomize(*doc.system, {"X", "Z"}, skewed), DegenerateRandomizer);
}
