#pragma once

#include "ocs/random_variable.hpp"
#include "ocs/space.hpp"
#include "ocs/system.hpp"

#include <string>
#include <vector>

namespace ocs {

// An external source of treatment assignment: its own space plus one
// assignment variable per treatment, each named after the treatment it
// randomizes. Correlated arms are allowed; degeneracy (some joint assignment
// of the treatments' values carrying mass 0 or 1) is rejected at use.
struct RandomizerSpec {
  SpacePtr space;
  std::vector<RandomVariable> arms;

  const RandomVariable& arm_for(const std::string& treatment) const;  // UnknownVariable
};

// Fair independent assignment over the given images; atoms r0, r1, ... for a
// single treatment and r<i><j>... (digit = arm index per treatment) jointly.
RandomizerSpec fair_randomizer(
    const std::vector<std::pair<std::string, std::vector<std::int64_t>>>& treatments);

// Binary coin with P(value 1) = p_one.
RandomizerSpec coin_randomizer(const std::string& treatment, const Rational& p_one);

// The experiment run on the product of the source space with the randomizer
// space: treatment values come from the randomizer coordinate, and the
// synthesized outcome realizes, at (w, w_r), the potential outcome the
// randomizer selected, evaluated at the source point w.
struct RandomizedSystem {
  ProductSpace prod;
  std::vector<std::string> treatment_names;
  std::string target_name;
  std::vector<RandomVariable> treatments;     // lifted arms on prod.space, named after the treatments
  RandomVariable outcome;                     // synthesized, named after the target
  PotentialOutcomeFamily source_family;       // target's family over the treatments, source space
  std::vector<RandomVariable> lifted_members; // family members lifted to prod.space, product-image order
};

// `target` may be omitted when exactly one observable is not a treatment.
// Errors: UnknownVariable / UnknownTarget for bad names, ImageMismatch when a
// randomizer arm does not cover the treatment's image, DegenerateRandomizer
// when some treatment assignment has randomizer mass outside (0, 1).
RandomizedSystem randomize(const ObservableCausalSystem& sys, const std::string& treatment,
                           const RandomizerSpec& spec);
RandomizedSystem randomize(const ObservableCausalSystem& sys, const std::string& treatment,
                           const std::string& target, const RandomizerSpec& spec);

// Several treatments assigned by one randomizer, possibly with correlated
// arms. Treatment order is canonicalized to observable order.
RandomizedSystem joint_randomize(const ObservableCausalSystem& sys,
                                 const std::vector<std::string>& treatments,
                                 const RandomizerSpec& spec);
RandomizedSystem joint_randomize(const ObservableCausalSystem& sys,
                                 const std::vector<std::string>& treatments,
                                 const std::string& target, const RandomizerSpec& spec);

struct ArmCheck {
  Assignment arm;
  bool equal = false;
  Law randomized;  // law of the outcome given the arm, on the product space
  Law source;      // law of the arm's potential outcome, on the source space
};

struct RandomizationCheck {
  bool all_equal = true;
  std::vector<ArmCheck> arms;
};

// Exact, arm by arm: the conditional law of the synthesized outcome given the
// lifted treatments equals the source law of the selected potential outcome.
RandomizationCheck verify_randomization_identity(const RandomizedSystem& rs);

}  // namespace ocs
