#include "ocs/matching.hpp"

#include "ocs/rng.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <utility>

namespace ocs {

namespace {

void check_inputs(const RandomVariable& x, const std::vector<RandomVariable>& zs,
                  std::size_t k) {
  if (k < 1 || k > zs.size()) {
    throw std::invalid_argument("matching depth " + std::to_string(k) + " out of range [1, " +
                                std::to_string(zs.size()) + "]");
  }
  for (const RandomVariable& z : zs) {
    if (z.space().get() != x.space().get()) {
      throw MixedSpaces("covariate '" + z.name() + "' lives on a different space");
    }
  }
  for (std::int64_t v : x.image()) {
    if (v != 0 && v != 1) {
      throw NonBinaryTreatment("treatment '" + x.name() + "' takes value " +
                               std::to_string(v));
    }
  }
}

CovariateKey key_at(const std::vector<RandomVariable>& zs, std::size_t k, std::size_t atom) {
  CovariateKey key;
  key.reserve(k);
  for (std::size_t i = 0; i < k; ++i) key.push_back(zs[i].value(atom));
  return key;
}

// mass in each (cell, arm)
std::map<CovariateKey, std::pair<Rational, Rational>> cell_arm_masses(
    const RandomVariable& x, const std::vector<RandomVariable>& zs, std::size_t k) {
  std::map<CovariateKey, std::pair<Rational, Rational>> cells;
  const SpacePtr& s = x.space();
  for (std::size_t a = 0; a < s->size(); ++a) {
    auto& arms = cells[key_at(zs, k, a)];
    (x.value(a) == 1 ? arms.first : arms.second) += s->atom(a).mass;
  }
  return cells;
}

}  // namespace

std::vector<CovariateKey> matchable_values(const RandomVariable& x,
                                           const std::vector<RandomVariable>& zs,
                                           std::size_t k) {
  check_inputs(x, zs, k);
  std::vector<CovariateKey> out;
  for (const auto& [key, arms] : cell_arm_masses(x, zs, k)) {
    if (arms.first > 0 && arms.second > 0) out.push_back(key);
  }
  return out;  // map order == sorted
}

Event matched_support(const RandomVariable& x, const std::vector<RandomVariable>& zs,
                      std::size_t k) {
  check_inputs(x, zs, k);
  const auto matchable = matchable_values(x, zs, k);
  const SpacePtr& s = x.space();
  std::vector<bool> mask(s->size(), false);
  for (std::size_t a = 0; a < s->size(); ++a) {
    mask[a] = std::binary_search(matchable.begin(), matchable.end(), key_at(zs, k, a));
  }
  return Event(s, std::move(mask));
}

MatchReport nesting_report(const RandomVariable& x, const std::vector<RandomVariable>& zs) {
  if (zs.empty()) throw std::invalid_argument("nesting report needs at least one covariate");
  MatchReport report;
  for (std::size_t k = 1; k <= zs.size(); ++k) {
    Event support = matched_support(x, zs, k);
    Rational m = measure(support);
    if (!report.levels.empty()) {
      const MatchLevel& prev = report.levels.back();
      if (!support.is_subset_of(prev.support)) report.nested = false;
    }
    report.levels.push_back(MatchLevel{k, matchable_values(x, zs, k), std::move(support),
                                       std::move(m)});
  }
  return report;
}

MatchedEstimate matched_estimate(const SampleBatch& batch, const RandomVariable& x,
                                 const RandomVariable& y,
                                 const std::vector<RandomVariable>& zs, std::size_t k,
                                 std::uint64_t seed) {
  check_inputs(x, zs, k);
  if (y.space().get() != x.space().get()) {
    throw MixedSpaces("outcome '" + y.name() + "' lives on a different space");
  }
  if (batch.space.get() != x.space().get()) {
    throw MixedSpaces("sample batch was drawn from a different space");
  }

  // outcome values per (cell, arm), in draw order
  std::map<CovariateKey, std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>
      cells;
  for (std::uint32_t atom : batch.draws) {
    auto& cell = cells[key_at(zs, k, atom)];
    (x.value(atom) == 1 ? cell.first : cell.second).push_back(y.value(atom));
  }

  MatchedEstimate est;
  SplitMix64 gen(seed);
  std::int64_t diff_sum = 0;
  for (auto& [key, cell] : cells) {
    deterministic_shuffle(cell.first, gen);
    deterministic_shuffle(cell.second, gen);
    const std::size_t m = std::min(cell.first.size(), cell.second.size());
    if (m == 0) continue;
    for (std::size_t i = 0; i < m; ++i) diff_sum += cell.first[i] - cell.second[i];
    est.pairs += m;
    est.pairs_per_cell[key] = m;
  }
  if (est.pairs == 0) {
    throw NoPairsFound("no covariate cell contains draws from both arms");
  }
  est.estimate = Rational(diff_sum, static_cast<std::int64_t>(est.pairs));
  return est;
}

Rational matched_population_limit(const RandomVariable& x, const RandomVariable& y,
                                  const std::vector<RandomVariable>& zs, std::size_t k) {
  check_inputs(x, zs, k);
  if (y.space().get() != x.space().get()) {
    throw MixedSpaces("outcome '" + y.name() + "' lives on a different space");
  }
  const SpacePtr& s = x.space();

  // per cell: arm masses and arm outcome sums
  std::map<CovariateKey, std::array<Rational, 4>> cells;  // m1, m0, s1, s0
  for (std::size_t a = 0; a < s->size(); ++a) {
    auto& c = cells[key_at(zs, k, a)];
    const Rational& mass = s->atom(a).mass;
    if (x.value(a) == 1) {
      c[0] += mass;
      c[2] += Rational(y.value(a)) * mass;
    } else {
      c[1] += mass;
      c[3] += Rational(y.value(a)) * mass;
    }
  }

  Rational weight_total = 0, weighted = 0;
  for (const auto& [key, c] : cells) {
    (void)key;
    if (c[0] == 0 || c[1] == 0) continue;  // not matchable
    const Rational w = std::min(c[0], c[1]);
    const Rational contrast = c[2] / c[0] - c[3] / c[1];
    weight_total += w;
    weighted += w * contrast;
  }
  if (weight_total == 0) throw NoPairsFound("no covariate cell is matchable");
  return weighted / weight_total;
}

}  // namespace ocs
