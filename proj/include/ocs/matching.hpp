#pragma once

#include "ocs/random_variable.hpp"
#include "ocs/sampling.hpp"
#include "ocs/space.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ocs {

// Named matching setup as it appears in model documents; names are resolved
// against a model's observables (covariates that are not observables are
// rejected there with UnknownCovariate).
struct MatchConfig {
  std::string treatment;
  std::string outcome;
  std::vector<std::string> covariates;
};

using CovariateKey = std::vector<std::int64_t>;

// Values of the first k covariates whose cell meets both treatment arms with
// positive measure. x must have image within {0, 1}; covariates must share
// its space. k in [1, zs.size()].
std::vector<CovariateKey> matchable_values(const RandomVariable& x,
                                           const std::vector<RandomVariable>& zs, std::size_t k);

// Union of the matchable cells.
Event matched_support(const RandomVariable& x, const std::vector<RandomVariable>& zs,
                      std::size_t k);

struct MatchLevel {
  std::size_t k = 0;
  std::vector<CovariateKey> matchable;
  Event support;
  Rational support_measure;
};

// Supports for k = 1..zs.size(). Matching on more covariates can only shrink
// the support; `nested` records that the sets (not just their measures) are
// in fact decreasing.
struct MatchReport {
  std::vector<MatchLevel> levels;
  bool nested = true;
};

MatchReport nesting_report(const RandomVariable& x, const std::vector<RandomVariable>& zs);

struct MatchedEstimate {
  std::size_t pairs = 0;
  Rational estimate;  // mean within-pair outcome difference, exact for the sample
  std::map<CovariateKey, std::size_t> pairs_per_cell;
};

// Greedy exact matching on the first k covariates: within each cell both arms
// are shuffled with a splitmix64 stream seeded by `seed` (cells processed in
// sorted key order) and paired first-to-first until the smaller arm runs out.
// Throws NoPairsFound when no cell yields a pair.
MatchedEstimate matched_estimate(const SampleBatch& batch, const RandomVariable& x,
                                 const RandomVariable& y, const std::vector<RandomVariable>& zs,
                                 std::size_t k, std::uint64_t seed);

// What the matched estimator converges to: cell contrasts E[y|x=1,z] - E[y|x=0,z]
// weighted by min(P(x=1,z), P(x=0,z)) over matchable cells, normalized. A
// diagnostic companion to matched_estimate, not an effect estimate; it equals
// the causal contrast only under extra assumptions. Throws NoPairsFound when
// no cell is matchable.
Rational matched_population_limit(const RandomVariable& x, const RandomVariable& y,
                                  const std::vector<RandomVariable>& zs, std::size_t k);

}  // namespace ocs
