#include "ocs/matching.hpp"

#include "ocs/model_io.hpp"
#include "ocs/rng.hpp"
#include "ocs/sampling.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace ocs;
using ocs::testing::frac;
using ocs::testing::model_path;

namespace {

struct BiasModel {
  ModelDocument doc;
  RandomVariable x, y, z;

  BiasModel()
      : doc(parse_model_file(model_path("match_bias.json"))),
        x(doc.variable("X")),
        y(doc.variable("Y")),
        z(doc.variable("Z")) {}
};

}  // namespace

TEST_CASE("matchable cells are those meeting both arms") {
  BiasModel m;
  REQUIRE(m.doc.matching);
  CHECK(m.doc.matching->treatment == "X");
  CHECK(m.doc.matching->outcome == "Y");
  CHECK(m.doc.matching->covariates == std::vector<std::string>{"Z"});

  // only the Z=1 cell has treated mass
  CHECK(matchable_values(m.x, {m.z}, 1) == std::vector<CovariateKey>{{1}});
  Event support = matched_support(m.x, {m.z}, 1);
  CHECK(support.member_ids() ==
        std::vector<std::string>{"in_t1", "in_t0", "in_c1", "in_c0"});
  CHECK(measure(support) == frac(1, 2));

  MatchReport report = nesting_report(m.x, {m.z});
  CHECK(report.nested);
  REQUIRE(report.levels.size() == 1);
  CHECK(report.levels[0].support_measure == frac(1, 2));
}

TEST_CASE("matching validates depth, spaces and the treatment image") {
  BiasModel m;
  CHECK_THROWS_AS(matchable_values(m.x, {m.z}, 0), std::invalid_argument);
  CHECK_THROWS_AS(matchable_values(m.x, {m.z}, 2), std::invalid_argument);
  CHECK_THROWS_AS(nesting_report(m.x, {}), std::invalid_argument);

  RandomVariable wide("W", m.doc.space, {0, 1, 2, 0, 1, 2});
  CHECK_THROWS_AS(matchable_values(wide, {m.z}, 1), NonBinaryTreatment);

  ocs::testing::SquareByHand sq;
  CHECK_THROWS_AS(matchable_values(m.x, {sq.x}, 1), MixedSpaces);
  CHECK_THROWS_AS(matched_population_limit(m.x, sq.y, {m.z}, 1), MixedSpaces);
}

TEST_CASE("population limit of the bias model is the in-cell contrast") {
  BiasModel m;
  // within Z=1: treated mean 3/4, control mean 1/4
  CHECK(matched_population_limit(m.x, m.y, {m.z}, 1) == frac(1, 2));
  // while the causal contrast vanishes and the raw observed one does not
  REQUIRE(m.doc.system);
  CHECK(ace(*m.doc.system, "X", "Y") == Rational(0));
  CHECK(aoe(m.x, m.y) == frac(1, 3));
}

TEST_CASE("population limit agrees with a conditional-expectation recomputation") {
  SplitMix64 gen(2026);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    SpacePtr space = ocs::testing::random_space(gen, 10, "m" + std::to_string(trial));
    if (space->size() < 2) continue;
    RandomVariable x = ocs::testing::random_binary(gen, space, "X");
    RandomVariable y = ocs::testing::random_binary(gen, space, "Y");
    std::vector<RandomVariable> zs = {ocs::testing::random_binary(gen, space, "Z1"),
                                      ocs::testing::random_binary(gen, space, "Z2")};
    for (std::size_t k = 1; k <= zs.size(); ++k) {
      std::vector<CovariateKey> cells = matchable_values(x, zs, k);
      if (cells.empty()) {
        CHECK_THROWS_AS(matched_population_limit(x, y, zs, k), NoPairsFound);
        continue;
      }
      Rational weight_total = 0, weighted = 0;
      for (const CovariateKey& cell : cells) {
        Event in_cell = Event::all(space);
        for (std::size_t i = 0; i < k; ++i) in_cell = in_cell & zs[i].preimage(cell[i]);
        Event treated = in_cell & x.preimage(1);
        Event control = in_cell & x.preimage(0);
        Rational w = std::min(measure(treated), measure(control));
        weight_total += w;
        weighted +=
            w * (conditional_expectation(y, treated) - conditional_expectation(y, control));
      }
      CHECK(matched_population_limit(x, y, zs, k) == weighted / weight_total);
      ++checked;
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("perfect confounding leaves nothing to match") {
  auto space = FiniteProbabilitySpace::make(
      "conf", {Atom{"a", frac(1, 2)}, Atom{"b", frac(1, 2)}});
  RandomVariable x("X", space, {1, 0});
  RandomVariable y("Y", space, {1, 0});
  RandomVariable z("Z", space, {1, 0});

  CHECK(matchable_values(x, {z}, 1).empty());
  CHECK(matched_support(x, {z}, 1).empty());
  CHECK_THROWS_AS(matched_population_limit(x, y, {z}, 1), NoPairsFound);

  SampleBatch batch = sample_atoms(space, 50, 3);
  CHECK_THROWS_AS(matched_estimate(batch, x, y, {z}, 1, 0), NoPairsFound);
}

TEST_CASE("matched_estimate is exact on crafted draws") {
  BiasModel m;
  // in_t1 (x=1, y=1) and in_c0 (x=0, y=0) share the Z=1 cell
  SampleBatch batch{m.doc.space, 0, {0, 3}};
  MatchedEstimate one = matched_estimate(batch, m.x, m.y, {m.z}, 1, 17);
  CHECK(one.pairs == 1);
  CHECK(one.estimate == Rational(1));
  CHECK(one.pairs_per_cell.at({1}) == 1);

  // constant outcomes within each arm make the pairing order irrelevant
  SampleBatch flat{m.doc.space, 0, {0, 0, 3, 3, 3}};
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    MatchedEstimate est = matched_estimate(flat, m.x, m.y, {m.z}, 1, seed);
    CHECK(est.pairs == 2);
    CHECK(est.estimate == Rational(1));
  }

  // draws in the unmatched Z=0 cell contribute nothing
  SampleBatch extra{m.doc.space, 0, {0, 3, 4, 4, 5}};
  MatchedEstimate est = matched_estimate(extra, m.x, m.y, {m.z}, 1, 2);
  CHECK(est.pairs == 1);
  CHECK(est.pairs_per_cell.size() == 1);
  CHECK(est.pairs_per_cell.count({1}) == 1);
}

TEST_CASE("matched_estimate is seed-deterministic and checks spaces") {
  BiasModel m;
  SampleBatch batch = sample_atoms(m.doc.space, 400, 9);
  MatchedEstimate a = matched_estimate(batch, m.x, m.y, {m.z}, 1, 4);
  MatchedEstimate b = matched_estimate(batch, m.x, m.y, {m.z}, 1, 4);
  CHECK(a.pairs == b.pairs);
  CHECK(a.estimate == b.estimate);
  CHECK(a.pairs_per_cell == b.pairs_per_cell);

  MatchedEstimate other_seed = matched_estimate(batch, m.x, m.y, {m.z}, 1, 5);
  CHECK(other_seed.pairs == a.pairs);

  ocs::testing::SquareByHand sq;
  SampleBatch foreign = sample_atoms(sq.space, 10, 1);
  CHECK_THROWS_AS(matched_estimate(foreign, m.x, m.y, {m.z}, 1, 0), MixedSpaces);
  CHECK_THROWS_AS(matched_estimate(batch, m.x, sq.y, {m.z}, 1, 0), MixedSpaces);
}

TEST_CASE("the matched estimator concentrates on its population limit") {
  BiasModel m;
  SampleBatch batch = sample_atoms(m.doc.space, 20000, 5);
  MatchedEstimate est = matched_estimate(batch, m.x, m.y, {m.z}, 1, 5);
  double err = std::abs(static_cast<double>(est.estimate) - 0.5);
  CHECK(err < 0.05);
}

TEST_CASE("supports shrink as covariates are added on the grid model") {
  ModelDocument doc = parse_model_file(model_path("grid_match.json"));
  REQUIRE(doc.matching);
  const RandomVariable& x = doc.variable(doc.matching->treatment);
  std::vector<RandomVariable> zs;
  for (const std::string& name : doc.matching->covariates) zs.push_back(doc.variable(name));

  MatchReport report = nesting_report(x, zs);
  CHECK(report.nested);
  REQUIRE(report.levels.size() == 2);
  CHECK(report.levels[0].support_measure == frac(1, 3));
  CHECK(report.levels[1].support_measure == frac(1, 9));
  CHECK(report.levels[1].support.is_subset_of(report.levels[0].support));
}
