#include "ocs/random_variable.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace ocs {

Assignment::Assignment(std::vector<std::pair<std::string, std::int64_t>> items)
    : items_(std::move(items)) {
  std::set<std::string> names;
  for (const auto& [n, v] : items_) {
    (void)v;
    if (!names.insert(n).second) {
      throw NameMismatch("duplicate name '" + n + "' in assignment");
    }
  }
}

std::vector<std::string> Assignment::names() const {
  std::vector<std::string> out;
  out.reserve(items_.size());
  for (const auto& [n, v] : items_) {
    (void)v;
    out.push_back(n);
  }
  return out;
}

std::vector<std::int64_t> Assignment::values() const {
  std::vector<std::int64_t> out;
  out.reserve(items_.size());
  for (const auto& [n, v] : items_) {
    (void)n;
    out.push_back(v);
  }
  return out;
}

std::optional<std::int64_t> Assignment::value_of(const std::string& name) const {
  for (const auto& [n, v] : items_) {
    if (n == name) return v;
  }
  return std::nullopt;
}

Assignment Assignment::restricted_to(const std::vector<std::string>& names) const {
  std::vector<std::pair<std::string, std::int64_t>> out;
  for (const auto& item : items_) {
    if (std::find(names.begin(), names.end(), item.first) != names.end()) out.push_back(item);
  }
  return Assignment(std::move(out));
}

Assignment Assignment::merged_with(const Assignment& other) const {
  std::vector<std::pair<std::string, std::int64_t>> out = items_;
  out.insert(out.end(), other.items_.begin(), other.items_.end());
  return Assignment(std::move(out));
}

std::string Assignment::to_string() const {
  if (items_.empty()) return "()";
  std::ostringstream os;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) os << ",";
    os << items_[i].first << "=" << items_[i].second;
  }
  return os.str();
}

RandomVariable::RandomVariable(std::string name, SpacePtr space,
                               std::vector<std::int64_t> values)
    : name_(std::move(name)), space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_->size()) {
    throw IncompleteVariable("variable '" + name_ + "' has " +
                             std::to_string(values_.size()) + " values for " +
                             std::to_string(space_->size()) + " atoms");
  }
}

RandomVariable RandomVariable::constant(SpacePtr space, std::string name, std::int64_t v) {
  std::vector<std::int64_t> values(space->size(), v);
  return RandomVariable(std::move(name), std::move(space), std::move(values));
}

RandomVariable RandomVariable::from_map(SpacePtr space, std::string name,
                                        const std::map<std::string, std::int64_t>& by_atom) {
  std::vector<std::int64_t> values(space->size(), 0);
  std::size_t found = 0;
  for (const auto& [id, v] : by_atom) {
    auto idx = space->index_of(id);
    if (!idx) {
      throw IncompleteVariable("variable '" + name + "' maps unknown atom '" + id + "'");
    }
    values[*idx] = v;
    ++found;
  }
  if (found != space->size()) {
    for (const Atom& a : space->atoms()) {
      if (!by_atom.count(a.id)) {
        throw IncompleteVariable("variable '" + name + "' is missing a value for atom '" +
                                 a.id + "'");
      }
    }
  }
  return RandomVariable(std::move(name), std::move(space), std::move(values));
}

std::vector<std::int64_t> RandomVariable::image() const {
  std::vector<std::int64_t> vals(values_);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

Event RandomVariable::preimage(std::int64_t v) const {
  std::vector<bool> mask(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) mask[i] = values_[i] == v;
  return Event(space_, std::move(mask));
}

RandomVariable RandomVariable::renamed(std::string name) const {
  return RandomVariable(std::move(name), space_, values_);
}

bool RandomVariable::same_realization(const RandomVariable& o) const {
  return space_.get() == o.space_.get() && values_ == o.values_;
}

Law::Law(std::vector<std::string> names, std::map<std::vector<std::int64_t>, Rational> entries)
    : names_(std::move(names)), entries_(std::move(entries)) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second < 0) throw NegativeMass("negative probability in law");
    it = it->second == 0 ? entries_.erase(it) : std::next(it);
  }
}

Rational Law::prob(const std::vector<std::int64_t>& tuple) const {
  auto it = entries_.find(tuple);
  return it == entries_.end() ? Rational(0) : it->second;
}

Rational Law::total() const {
  Rational t = 0;
  for (const auto& [k, p] : entries_) {
    (void)k;
    t += p;
  }
  return t;
}

bool same_entries(const Law& a, const Law& b) { return a.entries() == b.entries(); }

namespace {

const SpacePtr& common_space(const std::vector<RandomVariable>& vars) {
  if (vars.empty()) throw MixedSpaces("no variables given");
  const SpacePtr& s = vars.front().space();
  for (const RandomVariable& v : vars) {
    if (v.space().get() != s.get()) {
      throw MixedSpaces("variables '" + vars.front().name() + "' and '" + v.name() +
                        "' live on different spaces");
    }
  }
  return s;
}

std::vector<std::string> names_of(const std::vector<RandomVariable>& vars) {
  std::vector<std::string> out;
  out.reserve(vars.size());
  for (const RandomVariable& v : vars) out.push_back(v.name());
  return out;
}

}  // namespace

Law law(const std::vector<RandomVariable>& vars) {
  const SpacePtr& s = common_space(vars);
  std::map<std::vector<std::int64_t>, Rational> entries;
  for (std::size_t k = 0; k < s->size(); ++k) {
    const Rational& m = s->atom(k).mass;
    if (m == 0) continue;
    std::vector<std::int64_t> tuple;
    tuple.reserve(vars.size());
    for (const RandomVariable& v : vars) tuple.push_back(v.value(k));
    entries[std::move(tuple)] += m;
  }
  return Law(names_of(vars), std::move(entries));
}

Law conditional_law(const std::vector<RandomVariable>& targets, const Event& given) {
  const SpacePtr& s = common_space(targets);
  if (given.space().get() != s.get()) {
    throw MixedSpaces("conditioning event lives on a different space");
  }
  const Rational denom = measure(given);
  if (denom == 0) {
    throw ZeroMeasureConditioningEvent("conditioning event has measure zero");
  }
  std::map<std::vector<std::int64_t>, Rational> entries;
  for (std::size_t k = 0; k < s->size(); ++k) {
    if (!given.contains(k)) continue;
    const Rational& m = s->atom(k).mass;
    if (m == 0) continue;
    std::vector<std::int64_t> tuple;
    tuple.reserve(targets.size());
    for (const RandomVariable& v : targets) tuple.push_back(v.value(k));
    entries[std::move(tuple)] += m / denom;
  }
  return Law(names_of(targets), std::move(entries));
}

Rational expectation(const RandomVariable& v) {
  Rational total = 0;
  const SpacePtr& s = v.space();
  for (std::size_t k = 0; k < s->size(); ++k) total += Rational(v.value(k)) * s->atom(k).mass;
  return total;
}

Rational conditional_expectation(const RandomVariable& v, const Event& given) {
  if (given.space().get() != v.space().get()) {
    throw MixedSpaces("conditioning event lives on a different space");
  }
  const Rational denom = measure(given);
  if (denom == 0) {
    throw ZeroMeasureConditioningEvent("conditioning event has measure zero");
  }
  Rational total = 0;
  const SpacePtr& s = v.space();
  for (std::size_t k = 0; k < s->size(); ++k) {
    if (given.contains(k)) total += Rational(v.value(k)) * s->atom(k).mass;
  }
  return total / denom;
}

RandomVariable indicator(const std::vector<RandomVariable>& vars, const Assignment& a) {
  const SpacePtr& s = common_space(vars);
  if (vars.size() != a.size()) {
    throw NameMismatch("assignment '" + a.to_string() + "' does not cover " +
                       std::to_string(vars.size()) + " variables");
  }
  std::set<std::string> seen;
  std::vector<std::int64_t> want;
  want.reserve(vars.size());
  for (const RandomVariable& v : vars) {
    if (!seen.insert(v.name()).second) {
      throw NameMismatch("repeated variable '" + v.name() + "' in indicator");
    }
    auto val = a.value_of(v.name());
    if (!val) {
      throw NameMismatch("assignment '" + a.to_string() + "' has no value for '" + v.name() +
                         "'");
    }
    want.push_back(*val);
  }
  std::vector<std::int64_t> values(s->size(), 0);
  for (std::size_t k = 0; k < s->size(); ++k) {
    bool hit = true;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      if (vars[j].value(k) != want[j]) {
        hit = false;
        break;
      }
    }
    values[k] = hit ? 1 : 0;
  }
  std::ostringstream name;
  name << "I[";
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (j) name << ",";
    name << vars[j].name() << "=" << want[j];
  }
  name << "]";
  return RandomVariable(name.str(), s, std::move(values));
}

bool independent(const RandomVariable& a, const RandomVariable& b) {
  if (a.space().get() != b.space().get()) {
    throw MixedSpaces("variables '" + a.name() + "' and '" + b.name() +
                      "' live on different spaces");
  }
  // Exact factorization over the full image grid, zero-probability pairs
  // included.
  const Law joint = law({a, b});
  const Law la = law({a});
  const Law lb = law({b});
  for (std::int64_t u : a.image()) {
    for (std::int64_t v : b.image()) {
      if (joint.prob({u, v}) != la.prob({u}) * lb.prob({v})) return false;
    }
  }
  return true;
}

Rational aoe(const RandomVariable& x, const RandomVariable& y) {
  if (x.space().get() != y.space().get()) {
    throw MixedSpaces("treatment and outcome live on different spaces");
  }
  for (std::int64_t v : x.image()) {
    if (v != 0 && v != 1) {
      throw NonBinaryTreatment("treatment '" + x.name() + "' takes value " +
                               std::to_string(v));
    }
  }
  const Event arm1 = x.preimage(1);
  const Event arm0 = x.preimage(0);
  if (measure(arm1) == 0 || measure(arm0) == 0) {
    throw DegenerateTreatment("treatment '" + x.name() +
                              "' does not take both values with positive measure");
  }
  return conditional_expectation(y, arm1) - conditional_expectation(y, arm0);
}

}  // namespace ocs
