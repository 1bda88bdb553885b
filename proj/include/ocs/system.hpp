#pragma once

#include "ocs/family.hpp"
#include "ocs/random_variable.hpp"
#include "ocs/space.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ocs {

// A finite space, its observable variables, and one potential-outcome family
// per observable indexed by all observables (self-referential indices
// included). Construction checks structure only; the axioms are checked by
// validate(), whose findings are data rather than exceptions.
class ObservableCausalSystem {
 public:
  ObservableCausalSystem(SpacePtr space,
                         std::vector<RandomVariable> observables,
                         std::map<std::string, PotentialOutcomeFamily> complete_families);

  const SpacePtr& space() const { return space_; }
  const std::vector<RandomVariable>& observables() const { return observables_; }
  std::vector<std::string> observable_names() const;
  bool has_observable(const std::string& name) const;
  const RandomVariable& observable(const std::string& name) const;  // UnknownVariable

  const std::map<std::string, PotentialOutcomeFamily>& complete_families() const {
    return families_;
  }
  const PotentialOutcomeFamily& complete_family(const std::string& target) const;  // UnknownTarget

  // The target's family indexed by exactly `index_set`, obtained by
  // contracting the complete family over everything else. Index order is
  // canonicalized to observable order. Memoized; the cache is filled
  // idempotently and never changes observable behaviour.
  const PotentialOutcomeFamily& derived_family(const std::string& target,
                                               std::vector<std::string> index_set) const;

 private:
  SpacePtr space_;
  std::vector<RandomVariable> observables_;
  std::map<std::string, PotentialOutcomeFamily> families_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<std::string, std::vector<std::string>>, PotentialOutcomeFamily>
      cache_;
};

struct AxiomViolation {
  int axiom;               // 1 = missing member, 2 = per-atom consistency failure
  std::string target;
  Assignment assignment;
  std::string atom_id;     // empty for axiom-1 findings
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  std::vector<AxiomViolation> violations;
};

// Axiom 1: each observable has a family with a member for every assignment in
// the product of the observables' images. Axiom 2: on the event where the
// observables equal an assignment, that assignment's member equals the
// observed target, checked per atom (zero-mass atoms included).
ValidationReport validate(const ObservableCausalSystem& sys);

// Contraction: remove `over` from a family's index set by substituting the
// observed values of the removed indices. Names in `over` that the family
// does not index are ignored (so compositions over overlapping sets behave
// like a single contraction over the union); names that are not observables
// of the context at all throw UnknownIndexVariable. Throws IncompleteFamily
// if a needed member is missing.
PotentialOutcomeFamily contract(const std::vector<RandomVariable>& context,
                                const PotentialOutcomeFamily& family,
                                const std::vector<std::string>& over);

// Contract the target's complete family over every index. For a system
// satisfying the axioms this returns the observable itself.
RandomVariable fully_contract(const ObservableCausalSystem& sys, const std::string& target);

// The event on which the potential outcome of `target` under `assignment`
// (over a subset of observables) is pinned by observation: exactly the event
// where those observables take the assigned values.
Event identified_set(const ObservableCausalSystem& sys, const std::string& target,
                     const Assignment& assignment);

struct CausalReport {
  bool causal = false;
  Event witness;               // maximal-measure difference event; empty when !causal
  Rational witness_measure;    // 0 when !causal
  std::optional<std::pair<Assignment, Assignment>> differing;  // witnessing member pair
};

// Do the potential outcomes of `target` indexed by `sources` differ on a set
// of positive measure? Scans member pairs in product-image order, keeps the
// first pair attaining the maximal difference measure. Sources containing the
// target are rejected with SelfReferentialSource ("does Y cause Y" is not a
// supported question even though self-indexed families are).
CausalReport is_causal(const ObservableCausalSystem& sys,
                       const std::vector<std::string>& sources, const std::string& target);
CausalReport is_causal(const ObservableCausalSystem& sys, const std::string& source,
                       const std::string& target);

struct JointConditionReport {
  std::string moving;      // set member whose variation is being tested
  bool holds = false;
  Assignment fixed;        // witnessing assignment of the other set members
  CausalReport detail;
};

struct JointCausalReport {
  bool jointly_causal = false;
  // True when the source set has more than two members: the two-variable
  // definition is extended member-by-member, which is a strictly stronger
  // reading than any pairwise check and is flagged so callers know they are
  // beyond the two-variable case.
  bool extension = false;
  std::vector<JointConditionReport> conditions;
};

// Each member of `sources` must be causal for the target's potential outcome
// with the remaining members held at some fixed assignment.
JointCausalReport is_jointly_causal(const ObservableCausalSystem& sys,
                                    const std::vector<std::string>& sources,
                                    const std::string& target);

// E[target potential outcome at treatment=1] - E[at treatment=0], exact.
// The treatment's image must be exactly {0, 1} (NonBinaryTreatment).
Rational ace(const ObservableCausalSystem& sys, const std::string& treatment,
             const std::string& target);

struct ConsistentEnumeration {
  BigInt total;  // |image(y)| ^ (number of unidentified cells), exact
  std::vector<std::pair<RandomVariable, RandomVariable>> items;
  bool truncated = false;
};

// All pairs (y0, y1) with values in image(y) that reproduce y through
// y = (1-x) y0 + x y1. Cells identified by observation are pinned; the
// unidentified cells run through image(y) like digits of a counter, the
// first atom most significant and values ascending, so the stream order is
// reproducible. Stops after `cap` items and sets `truncated`.
ConsistentEnumeration enumerate_consistent(const RandomVariable& x, const RandomVariable& y,
                                           std::uint64_t cap);

// The identified sets of the target over all assignments of `index_set`
// partition the space: pairwise disjoint with union everything. True for any
// well-formed system; exposed as an executable check.
bool fundamental_problem_check(const ObservableCausalSystem& sys, const std::string& target,
                               const std::vector<std::string>& index_set);

// Lift a family declared over part of the observables to a complete one: the
// member for a full assignment is the declared member for its restriction.
// Contracting the lift over the added indices gives back the input, and the
// lift inherits per-atom consistency from the partial family.
PotentialOutcomeFamily lift_to_complete(const SpacePtr& space,
                                        const std::vector<RandomVariable>& observables,
                                        const PotentialOutcomeFamily& partial);

// The smallest consistent family for a target over `index_names`: each member
// equals the observed target on its identified set and 0 elsewhere.
PotentialOutcomeFamily minimal_family(const std::vector<RandomVariable>& observables,
                                      const std::string& target,
                                      const std::vector<std::string>& index_names);

}  // namespace ocs
