#include "ocs/system.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace ocs {

namespace {

std::vector<std::vector<std::int64_t>> cartesian(
    const std::vector<std::vector<std::int64_t>>& images) {
  std::size_t total = 1;
  for (const auto& img : images) total *= img.size();
  std::vector<std::vector<std::int64_t>> keys;
  keys.reserve(total);
  std::vector<std::size_t> digits(images.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<std::int64_t> key;
    key.reserve(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) key.push_back(images[i][digits[i]]);
    keys.push_back(std::move(key));
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < images[i].size()) break;
      digits[i] = 0;
    }
  }
  return keys;
}

const RandomVariable* find_var(const std::vector<RandomVariable>& vars,
                               const std::string& name) {
  for (const RandomVariable& v : vars) {
    if (v.name() == name) return &v;
  }
  return nullptr;
}

Assignment make_assignment(const std::vector<std::string>& names,
                           const std::vector<std::int64_t>& values) {
  std::vector<std::pair<std::string, std::int64_t>> items;
  items.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) items.emplace_back(names[i], values[i]);
  return Assignment(std::move(items));
}

}  // namespace

ObservableCausalSystem::ObservableCausalSystem(
    SpacePtr space, std::vector<RandomVariable> observables,
    std::map<std::string, PotentialOutcomeFamily> complete_families)
    : space_(std::move(space)),
      observables_(std::move(observables)),
      families_(std::move(complete_families)) {
  if (observables_.empty()) throw UnknownVariable("a system needs at least one observable");
  std::set<std::string> names;
  for (const RandomVariable& v : observables_) {
    if (v.space().get() != space_.get()) {
      throw MixedSpaces("observable '" + v.name() + "' lives on a different space");
    }
    if (!names.insert(v.name()).second) {
      throw NameMismatch("duplicate observable name '" + v.name() + "'");
    }
  }
  const std::vector<std::string> all_names = observable_names();
  for (const auto& [key, fam] : families_) {
    if (key != fam.target()) {
      throw UnknownTarget("family stored under '" + key + "' targets '" + fam.target() + "'");
    }
    if (!names.count(fam.target())) {
      throw UnknownTarget("family target '" + fam.target() + "' is not an observable");
    }
    if (fam.space().get() != space_.get()) {
      throw MixedSpaces("family for '" + fam.target() + "' lives on a different space");
    }
    if (fam.index_names() != all_names) {
      throw UnknownIndexVariable("family for '" + fam.target() +
                                 "' must be indexed by all observables in order");
    }
  }
}

std::vector<std::string> ObservableCausalSystem::observable_names() const {
  std::vector<std::string> out;
  out.reserve(observables_.size());
  for (const RandomVariable& v : observables_) out.push_back(v.name());
  return out;
}

bool ObservableCausalSystem::has_observable(const std::string& name) const {
  return find_var(observables_, name) != nullptr;
}

const RandomVariable& ObservableCausalSystem::observable(const std::string& name) const {
  const RandomVariable* v = find_var(observables_, name);
  if (!v) throw UnknownVariable("no observable named '" + name + "'");
  return *v;
}

const PotentialOutcomeFamily& ObservableCausalSystem::complete_family(
    const std::string& target) const {
  auto it = families_.find(target);
  if (it == families_.end()) {
    throw UnknownTarget("no potential-outcome family for '" + target + "'");
  }
  return it->second;
}

const PotentialOutcomeFamily& ObservableCausalSystem::derived_family(
    const std::string& target, std::vector<std::string> index_set) const {
  // canonicalize to observable order, dropping duplicates
  std::vector<std::string> canonical;
  for (const RandomVariable& v : observables_) {
    if (std::find(index_set.begin(), index_set.end(), v.name()) != index_set.end()) {
      canonical.push_back(v.name());
    }
  }
  std::set<std::string> known(canonical.begin(), canonical.end());
  for (const std::string& n : index_set) {
    if (!known.count(n)) throw UnknownIndexVariable("no observable named '" + n + "'");
  }

  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto key = std::make_pair(target, canonical);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;

  const PotentialOutcomeFamily& full = complete_family(target);
  std::vector<std::string> over;
  for (const RandomVariable& v : observables_) {
    if (!known.count(v.name())) over.push_back(v.name());
  }
  auto inserted = cache_.emplace(std::move(key), contract(observables_, full, over));
  return inserted.first->second;
}

ValidationReport validate(const ObservableCausalSystem& sys) {
  ValidationReport report;
  const auto& obs = sys.observables();
  const SpacePtr& space = sys.space();

  std::vector<std::string> names;
  std::vector<std::vector<std::int64_t>> images;
  for (const RandomVariable& v : obs) {
    names.push_back(v.name());
    images.push_back(v.image());
  }
  const auto full_keys = cartesian(images);

  for (std::size_t t = 0; t < obs.size(); ++t) {
    const std::string& target = names[t];
    auto fam_it = sys.complete_families().find(target);
    if (fam_it == sys.complete_families().end()) {
      report.violations.push_back(
          {1, target, Assignment(), "", "no potential-outcome family declared"});
      continue;
    }
    const PotentialOutcomeFamily& fam = fam_it->second;

    // Axiom 1: a member for every assignment in the product of the images.
    for (const auto& key : full_keys) {
      if (!fam.member(key)) {
        report.violations.push_back({1, target, make_assignment(names, key), "",
                                     "missing potential outcome for this assignment"});
      }
    }

    // Axiom 2: on its own observed assignment, the member reproduces the
    // observed target. Pointwise over atoms, zero-mass atoms included.
    for (std::size_t k = 0; k < space->size(); ++k) {
      std::vector<std::int64_t> observed;
      observed.reserve(obs.size());
      for (const RandomVariable& v : obs) observed.push_back(v.value(k));
      const RandomVariable* member = fam.member(observed);
      if (!member) continue;  // already reported as an axiom-1 gap
      if (member->value(k) != observed[t]) {
        std::ostringstream detail;
        detail << "member takes " << member->value(k) << " but the observed target is "
               << observed[t];
        report.violations.push_back({2, target, make_assignment(names, observed),
                                     space->atom(k).id, detail.str()});
      }
    }
  }
  report.valid = report.violations.empty();
  return report;
}

PotentialOutcomeFamily contract(const std::vector<RandomVariable>& context,
                                const PotentialOutcomeFamily& family,
                                const std::vector<std::string>& over) {
  for (const std::string& n : over) {
    if (!find_var(context, n)) {
      throw UnknownIndexVariable("contraction index '" + n + "' is not an observable");
    }
  }
  std::set<std::string> removed_names;
  for (const std::string& n : over) {
    if (std::find(family.index_names().begin(), family.index_names().end(), n) !=
        family.index_names().end()) {
      removed_names.insert(n);  // indices the family does not carry are ignored
    }
  }
  if (removed_names.empty()) return family;

  const SpacePtr& space = family.space();
  std::vector<std::size_t> kept, dropped;
  for (std::size_t i = 0; i < family.index_names().size(); ++i) {
    (removed_names.count(family.index_names()[i]) ? dropped : kept).push_back(i);
  }
  // observed values of the dropped indices, per atom
  std::vector<const RandomVariable*> dropped_vars;
  for (std::size_t i : dropped) {
    const RandomVariable* v = find_var(context, family.index_names()[i]);
    if (v->space().get() != space.get()) {
      throw MixedSpaces("context variable '" + v->name() + "' lives on a different space");
    }
    dropped_vars.push_back(v);
  }

  std::vector<std::string> kept_names;
  std::vector<std::vector<std::int64_t>> kept_images;
  for (std::size_t i : kept) {
    kept_names.push_back(family.index_names()[i]);
    kept_images.push_back(family.index_images()[i]);
  }

  std::map<std::vector<std::int64_t>, RandomVariable> members;
  for (const auto& kept_key : cartesian(kept_images)) {
    std::vector<std::int64_t> values(space->size(), 0);
    std::vector<std::int64_t> full_key(family.index_names().size(), 0);
    for (std::size_t j = 0; j < kept.size(); ++j) full_key[kept[j]] = kept_key[j];
    for (std::size_t k = 0; k < space->size(); ++k) {
      for (std::size_t j = 0; j < dropped.size(); ++j) {
        full_key[dropped[j]] = dropped_vars[j]->value(k);
      }
      const RandomVariable* member = family.member(full_key);
      if (!member) {
        throw IncompleteFamily(
            "cannot contract '" + family.target() + "': no member for assignment " +
            family.key_assignment(full_key).to_string() + " needed at atom '" +
            space->atom(k).id + "'");
      }
      values[k] = member->value(k);
    }
    members.emplace(kept_key,
                    RandomVariable(PotentialOutcomeFamily::member_name(
                                       family.target(), kept_names, kept_key),
                                   space, std::move(values)));
  }
  return PotentialOutcomeFamily(family.target(), kept_names, kept_images, std::move(members));
}

RandomVariable fully_contract(const ObservableCausalSystem& sys, const std::string& target) {
  if (!sys.has_observable(target)) throw UnknownTarget("no observable named '" + target + "'");
  const PotentialOutcomeFamily& derived = sys.derived_family(target, {});
  return *derived.member({});
}

Event identified_set(const ObservableCausalSystem& sys, const std::string& target,
                     const Assignment& assignment) {
  if (!sys.has_observable(target)) throw UnknownTarget("no observable named '" + target + "'");
  std::vector<bool> mask(sys.space()->size(), true);
  for (const auto& [name, value] : assignment.items()) {
    if (!sys.has_observable(name)) {
      throw UnknownIndexVariable("no observable named '" + name + "'");
    }
    const RandomVariable& v = sys.observable(name);
    for (std::size_t k = 0; k < mask.size(); ++k) {
      if (v.value(k) != value) mask[k] = false;
    }
  }
  return Event(sys.space(), std::move(mask));
}

namespace {

struct BestDifference {
  bool found = false;
  Rational best_measure;
  std::vector<bool> mask;
  std::vector<std::int64_t> key_a, key_b;
};

// Measure of {member(a) != member(b)}; keeps the first pair attaining the max.
void consider_pair(const PotentialOutcomeFamily& fam, const std::vector<std::int64_t>& a,
                   const std::vector<std::int64_t>& b, BestDifference& best) {
  const RandomVariable* va = fam.member(a);
  const RandomVariable* vb = fam.member(b);
  if (!va || !vb) {
    throw IncompleteFamily("family for '" + fam.target() +
                           "' is missing members needed for a causality scan");
  }
  const SpacePtr& space = fam.space();
  std::vector<bool> mask(space->size(), false);
  Rational m = 0;
  for (std::size_t k = 0; k < space->size(); ++k) {
    if (va->value(k) != vb->value(k)) {
      mask[k] = true;
      m += space->atom(k).mass;
    }
  }
  if (!best.found || m > best.best_measure) {
    best = {true, std::move(m), std::move(mask), a, b};
  }
}

}  // namespace

CausalReport is_causal(const ObservableCausalSystem& sys,
                       const std::vector<std::string>& sources, const std::string& target) {
  if (!sys.has_observable(target)) {
    throw UnknownVariable("no observable named '" + target + "'");
  }
  std::set<std::string> seen;
  for (const std::string& s : sources) {
    if (!sys.has_observable(s)) throw UnknownVariable("no observable named '" + s + "'");
    if (s == target) {
      throw SelfReferentialSource("'" + target + "' cannot be tested as a cause of itself");
    }
    if (!seen.insert(s).second) throw NameMismatch("repeated source '" + s + "'");
  }

  const PotentialOutcomeFamily& fam = sys.derived_family(target, sources);
  const auto keys = fam.product_image();
  BestDifference best;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      consider_pair(fam, keys[i], keys[j], best);
    }
  }

  CausalReport report{false, Event::none(sys.space()), Rational(0), std::nullopt};
  if (best.found && best.best_measure > 0) {
    report.causal = true;
    report.witness = Event(sys.space(), std::move(best.mask));
    report.witness_measure = best.best_measure;
    report.differing = {fam.key_assignment(best.key_a), fam.key_assignment(best.key_b)};
  }
  return report;
}

CausalReport is_causal(const ObservableCausalSystem& sys, const std::string& source,
                       const std::string& target) {
  return is_causal(sys, std::vector<std::string>{source}, target);
}

JointCausalReport is_jointly_causal(const ObservableCausalSystem& sys,
                                    const std::vector<std::string>& sources,
                                    const std::string& target) {
  if (!sys.has_observable(target)) {
    throw UnknownVariable("no observable named '" + target + "'");
  }
  std::set<std::string> seen;
  for (const std::string& s : sources) {
    if (!sys.has_observable(s)) throw UnknownVariable("no observable named '" + s + "'");
    if (s == target) {
      throw SelfReferentialSource("'" + target + "' cannot be tested as a cause of itself");
    }
    if (!seen.insert(s).second) throw NameMismatch("repeated source '" + s + "'");
  }
  if (sources.size() < 2) {
    throw Error("joint causality needs at least two sources");
  }

  const PotentialOutcomeFamily& fam = sys.derived_family(target, sources);
  const auto& names = fam.index_names();
  const auto& images = fam.index_images();

  JointCausalReport report;
  report.extension = sources.size() > 2;
  report.jointly_causal = true;

  for (std::size_t m = 0; m < names.size(); ++m) {
    std::vector<std::string> rest_names;
    std::vector<std::vector<std::int64_t>> rest_images;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i != m) {
        rest_names.push_back(names[i]);
        rest_images.push_back(images[i]);
      }
    }

    BestDifference best;
    std::vector<std::int64_t> best_rest;
    for (const auto& rest_key : cartesian(rest_images)) {
      auto full = [&](std::int64_t moving_value) {
        std::vector<std::int64_t> key;
        key.reserve(names.size());
        std::size_t r = 0;
        for (std::size_t i = 0; i < names.size(); ++i) {
          key.push_back(i == m ? moving_value : rest_key[r++]);
        }
        return key;
      };
      for (std::size_t a = 0; a < images[m].size(); ++a) {
        for (std::size_t b = a + 1; b < images[m].size(); ++b) {
          const Rational before = best.found ? best.best_measure : Rational(-1);
          consider_pair(fam, full(images[m][a]), full(images[m][b]), best);
          if (best.found && best.best_measure > before) best_rest = rest_key;
        }
      }
    }

    JointConditionReport cond{
        names[m], best.found && best.best_measure > 0, Assignment{},
        CausalReport{false, Event::none(sys.space()), Rational(0), std::nullopt}};
    cond.fixed = make_assignment(rest_names, best_rest.empty() && !rest_names.empty()
                                                 ? cartesian(rest_images).front()
                                                 : best_rest);
    cond.detail.causal = cond.holds;
    if (cond.holds) {
      cond.detail.witness = Event(sys.space(), std::move(best.mask));
      cond.detail.witness_measure = best.best_measure;
      cond.detail.differing = {fam.key_assignment(best.key_a), fam.key_assignment(best.key_b)};
    }
    report.conditions.push_back(std::move(cond));
    if (!report.conditions.back().holds) report.jointly_causal = false;
  }
  return report;
}

Rational ace(const ObservableCausalSystem& sys, const std::string& treatment,
             const std::string& target) {
  if (!sys.has_observable(treatment)) {
    throw UnknownVariable("no observable named '" + treatment + "'");
  }
  if (!sys.has_observable(target)) {
    throw UnknownVariable("no observable named '" + target + "'");
  }
  const auto img = sys.observable(treatment).image();
  if (img != std::vector<std::int64_t>{0, 1}) {
    throw NonBinaryTreatment("treatment '" + treatment + "' must take exactly the values 0 and 1");
  }
  const PotentialOutcomeFamily& fam = sys.derived_family(target, {treatment});
  return expectation(*fam.member({1})) - expectation(*fam.member({0}));
}

ConsistentEnumeration enumerate_consistent(const RandomVariable& x, const RandomVariable& y,
                                           std::uint64_t cap) {
  if (x.space().get() != y.space().get()) {
    throw MixedSpaces("treatment and outcome live on different spaces");
  }
  for (std::int64_t v : x.image()) {
    if (v != 0 && v != 1) {
      throw NonBinaryTreatment("treatment '" + x.name() + "' takes value " +
                               std::to_string(v));
    }
  }
  const SpacePtr& space = x.space();
  const std::vector<std::int64_t> vals = y.image();
  const std::size_t n = space->size();

  // Every atom leaves exactly one of (y0, y1) unidentified: the member whose
  // treatment arm the atom is not in.
  ConsistentEnumeration out;
  out.total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    (void)k;
    out.total *= static_cast<unsigned>(vals.size());
  }

  const std::string name0 = PotentialOutcomeFamily::member_name(y.name(), {x.name()}, {0});
  const std::string name1 = PotentialOutcomeFamily::member_name(y.name(), {x.name()}, {1});

  std::vector<std::size_t> digits(n, 0);
  while (true) {
    if (out.items.size() == cap) {
      out.truncated = true;
      break;
    }
    std::vector<std::int64_t> v0(n), v1(n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t free_value = vals[digits[k]];
      if (x.value(k) == 0) {
        v0[k] = y.value(k);  // identified
        v1[k] = free_value;
      } else {
        v0[k] = free_value;
        v1[k] = y.value(k);
      }
    }
    out.items.emplace_back(RandomVariable(name0, space, std::move(v0)),
                           RandomVariable(name1, space, std::move(v1)));

    // next digit string: first atom most significant, values ascending
    std::size_t i = n;
    while (i-- > 0) {
      if (++digits[i] < vals.size()) break;
      digits[i] = 0;
      if (i == 0) return out;  // wrapped: everything emitted
    }
    if (n == 0) return out;  // single empty completion
  }
  return out;
}

bool fundamental_problem_check(const ObservableCausalSystem& sys, const std::string& target,
                               const std::vector<std::string>& index_set) {
  std::vector<std::string> canonical;
  std::vector<std::vector<std::int64_t>> images;
  for (const RandomVariable& v : sys.observables()) {
    if (std::find(index_set.begin(), index_set.end(), v.name()) != index_set.end()) {
      canonical.push_back(v.name());
      images.push_back(v.image());
    }
  }
  std::set<std::string> known(canonical.begin(), canonical.end());
  for (const std::string& n : index_set) {
    if (!known.count(n)) throw UnknownIndexVariable("no observable named '" + n + "'");
  }

  std::vector<std::size_t> coverage(sys.space()->size(), 0);
  for (const auto& key : cartesian(images)) {
    const Event e = identified_set(sys, target, make_assignment(canonical, key));
    for (std::size_t k = 0; k < coverage.size(); ++k) {
      if (e.contains(k)) ++coverage[k];
    }
  }
  return std::all_of(coverage.begin(), coverage.end(),
                     [](std::size_t c) { return c == 1; });
}

PotentialOutcomeFamily lift_to_complete(const SpacePtr& space,
                                        const std::vector<RandomVariable>& observables,
                                        const PotentialOutcomeFamily& partial) {
  if (partial.space().get() != space.get()) {
    throw MixedSpaces("family and observables live on different spaces");
  }
  std::vector<std::string> all_names;
  std::vector<std::vector<std::int64_t>> all_images;
  for (const RandomVariable& v : observables) {
    all_names.push_back(v.name());
    all_images.push_back(v.image());
  }
  // positions of the declared indices within the full list
  std::vector<std::size_t> positions;
  for (const std::string& n : partial.index_names()) {
    auto it = std::find(all_names.begin(), all_names.end(), n);
    if (it == all_names.end()) {
      throw UnknownIndexVariable("family index '" + n + "' is not an observable");
    }
    positions.push_back(static_cast<std::size_t>(it - all_names.begin()));
  }

  std::map<std::vector<std::int64_t>, RandomVariable> members;
  for (const auto& full_key : cartesian(all_images)) {
    std::vector<std::int64_t> restriction;
    restriction.reserve(positions.size());
    for (std::size_t p : positions) restriction.push_back(full_key[p]);
    const RandomVariable* member = partial.member(restriction);
    if (member) members.emplace(full_key, *member);
    // gaps surface later as axiom-1 violations
  }
  return PotentialOutcomeFamily(partial.target(), all_names, all_images, std::move(members));
}

PotentialOutcomeFamily minimal_family(const std::vector<RandomVariable>& observables,
                                      const std::string& target,
                                      const std::vector<std::string>& index_names) {
  const RandomVariable* tv = find_var(observables, target);
  if (!tv) throw UnknownVariable("no observable named '" + target + "'");
  const SpacePtr& space = tv->space();

  std::vector<const RandomVariable*> idx;
  std::vector<std::vector<std::int64_t>> images;
  for (const std::string& n : index_names) {
    const RandomVariable* v = find_var(observables, n);
    if (!v) throw UnknownIndexVariable("no observable named '" + n + "'");
    idx.push_back(v);
    images.push_back(v->image());
  }

  std::map<std::vector<std::int64_t>, RandomVariable> members;
  for (const auto& key : cartesian(images)) {
    std::vector<std::int64_t> values(space->size(), 0);
    for (std::size_t k = 0; k < space->size(); ++k) {
      bool identified = true;
      for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i]->value(k) != key[i]) {
          identified = false;
          break;
        }
      }
      values[k] = identified ? tv->value(k) : 0;
    }
    members.emplace(key, RandomVariable(PotentialOutcomeFamily::member_name(
                                            target, index_names, key),
                                        space, std::move(values)));
  }
  return PotentialOutcomeFamily(target, index_names, images, std::move(members));
}

}  // namespace ocs
