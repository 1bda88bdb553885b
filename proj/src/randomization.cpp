#include "ocs/randomization.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace ocs {

const RandomVariable& RandomizerSpec::arm_for(const std::string& treatment) const {
  for (const RandomVariable& v : arms) {
    if (v.name() == treatment) return v;
  }
  throw UnknownVariable("randomizer has no arm named '" + treatment + "'");
}

RandomizerSpec fair_randomizer(
    const std::vector<std::pair<std::string, std::vector<std::int64_t>>>& treatments) {
  if (treatments.empty()) throw UnknownVariable("fair randomizer needs at least one treatment");
  std::size_t total = 1;
  for (const auto& [name, image] : treatments) {
    (void)name;
    if (image.empty()) throw ImageMismatch("fair randomizer arm with empty image");
    total *= image.size();
  }

  std::string label = "randomizer(";
  for (std::size_t i = 0; i < treatments.size(); ++i) {
    if (i) label += ",";
    label += treatments[i].first;
  }
  label += ")";

  // atoms r<i><j>...: one digit per treatment, the last treatment cycling
  // fastest; every joint assignment gets mass 1/total
  std::vector<Atom> atoms;
  std::vector<std::vector<std::int64_t>> columns(treatments.size());
  std::vector<std::size_t> digits(treatments.size(), 0);
  const Rational mass(1, static_cast<long>(total));
  for (std::size_t n = 0; n < total; ++n) {
    std::string id = "r";
    for (std::size_t i = 0; i < treatments.size(); ++i) {
      id += std::to_string(digits[i]);
      columns[i].push_back(treatments[i].second[digits[i]]);
    }
    atoms.push_back(Atom{std::move(id), mass});
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < treatments[i].second.size()) break;
      digits[i] = 0;
    }
  }

  RandomizerSpec spec;
  spec.space = FiniteProbabilitySpace::make(std::move(label), std::move(atoms));
  for (std::size_t i = 0; i < treatments.size(); ++i) {
    spec.arms.emplace_back(treatments[i].first, spec.space, std::move(columns[i]));
  }
  return spec;
}

RandomizerSpec coin_randomizer(const std::string& treatment, const Rational& p_one) {
  if (p_one <= 0 || p_one >= 1) {
    throw DegenerateRandomizer("coin probability " + to_string(p_one) +
                               " is not strictly between 0 and 1");
  }
  RandomizerSpec spec;
  spec.space = FiniteProbabilitySpace::make(
      "randomizer(" + treatment + ")",
      {Atom{"r0", Rational(1) - p_one}, Atom{"r1", p_one}});
  spec.arms.emplace_back(treatment, spec.space, std::vector<std::int64_t>{0, 1});
  return spec;
}

namespace {

RandomizedSystem build(const ObservableCausalSystem& sys,
                       std::vector<std::string> treatments, const std::string& target_in,
                       const RandomizerSpec& spec) {
  if (treatments.empty()) throw UnknownVariable("randomization needs a treatment");
  std::set<std::string> tset;
  for (const std::string& t : treatments) {
    if (!sys.has_observable(t)) throw UnknownVariable("no observable named '" + t + "'");
    if (!tset.insert(t).second) throw NameMismatch("repeated treatment '" + t + "'");
  }

  std::string target = target_in;
  if (target.empty()) {
    for (const RandomVariable& v : sys.observables()) {
      if (tset.count(v.name())) continue;
      if (!target.empty()) {
        throw UnknownTarget("several non-treatment observables; pass the target explicitly");
      }
      target = v.name();
    }
    if (target.empty()) throw UnknownTarget("no non-treatment observable to use as target");
  } else {
    if (!sys.has_observable(target)) throw UnknownTarget("no observable named '" + target + "'");
    if (tset.count(target)) throw UnknownTarget("target '" + target + "' is also a treatment");
  }

  // canonical treatment order = observable order
  std::vector<std::string> canonical;
  for (const RandomVariable& v : sys.observables()) {
    if (tset.count(v.name())) canonical.push_back(v.name());
  }

  const PotentialOutcomeFamily& family = sys.derived_family(target, canonical);

  // one randomizer arm per treatment, covering the treatment's image
  std::vector<const RandomVariable*> arms;
  for (const std::string& t : canonical) {
    const RandomVariable& arm = spec.arm_for(t);
    const auto arm_image = arm.image();
    for (std::int64_t v : sys.observable(t).image()) {
      if (!std::binary_search(arm_image.begin(), arm_image.end(), v)) {
        throw ImageMismatch("randomizer arm for '" + t + "' never takes the value " +
                            std::to_string(v));
      }
    }
    arms.push_back(&arm);
  }

  // every family assignment must be drawn with probability strictly in (0,1)
  for (const auto& key : family.product_image()) {
    Rational p = 0;
    for (std::size_t j = 0; j < spec.space->size(); ++j) {
      bool hit = true;
      for (std::size_t i = 0; i < arms.size(); ++i) {
        if (arms[i]->value(j) != key[i]) {
          hit = false;
          break;
        }
      }
      if (hit) p += spec.space->atom(j).mass;
    }
    if (p <= 0 || p >= 1) {
      throw DegenerateRandomizer("assignment " + family.key_assignment(key).to_string() +
                                 " has randomizer mass " + to_string(p));
    }
  }

  ProductSpace prod_space = product(sys.space(), spec.space);
  const SpacePtr prod = prod_space.space;  // keep alive past the move below
  const std::size_t nright = spec.space->size();

  std::vector<RandomVariable> treatments_lifted;
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    std::vector<std::int64_t> values(prod->size());
    for (std::size_t k = 0; k < prod->size(); ++k) values[k] = arms[i]->value(k % nright);
    treatments_lifted.emplace_back(canonical[i], prod, std::move(values));
  }

  std::vector<std::int64_t> outcome_values(prod->size(), 0);
  {
    std::vector<std::int64_t> key(canonical.size());
    for (std::size_t k = 0; k < prod->size(); ++k) {
      const std::size_t j = k % nright;
      for (std::size_t i = 0; i < arms.size(); ++i) key[i] = arms[i]->value(j);
      const RandomVariable* member = family.member(key);
      // arms outside the family's index set contribute nothing (empty sum)
      outcome_values[k] = member ? member->value(k / nright) : 0;
    }
  }

  std::vector<RandomVariable> lifted;
  for (const auto& key : family.product_image()) {
    const RandomVariable* member = family.member(key);
    std::vector<std::int64_t> values(prod->size());
    for (std::size_t k = 0; k < prod->size(); ++k) values[k] = member->value(k / nright);
    lifted.emplace_back(member->name(), prod, std::move(values));
  }

  return RandomizedSystem{std::move(prod_space),
                          std::move(canonical),
                          target,
                          std::move(treatments_lifted),
                          RandomVariable(target, prod, std::move(outcome_values)),
                          family,
                          std::move(lifted)};
}

}  // namespace

RandomizedSystem randomize(const ObservableCausalSystem& sys, const std::string& treatment,
                           const RandomizerSpec& spec) {
  return build(sys, {treatment}, "", spec);
}

RandomizedSystem randomize(const ObservableCausalSystem& sys, const std::string& treatment,
                           const std::string& target, const RandomizerSpec& spec) {
  return build(sys, {treatment}, target, spec);
}

RandomizedSystem joint_randomize(const ObservableCausalSystem& sys,
                                 const std::vector<std::string>& treatments,
                                 const RandomizerSpec& spec) {
  return build(sys, treatments, "", spec);
}

RandomizedSystem joint_randomize(const ObservableCausalSystem& sys,
                                 const std::vector<std::string>& treatments,
                                 const std::string& target, const RandomizerSpec& spec) {
  return build(sys, treatments, target, spec);
}

RandomizationCheck verify_randomization_identity(const RandomizedSystem& rs) {
  RandomizationCheck check;
  for (const auto& key : rs.source_family.product_image()) {
    Event arm_event = Event::all(rs.prod.space);
    for (std::size_t i = 0; i < rs.treatments.size(); ++i) {
      arm_event = arm_event & rs.treatments[i].preimage(key[i]);
    }
    ArmCheck arm{rs.source_family.key_assignment(key),
                 false,
                 conditional_law({rs.outcome}, arm_event),
                 law({*rs.source_family.member(key)})};
    arm.equal = same_entries(arm.randomized, arm.source);
    if (!arm.equal) check.all_equal = false;
    check.arms.push_back(std::move(arm));
  }
  return check;
}

}  // namespace ocs
