#pragma once

#include "ocs/errors.hpp"
#include "ocs/rational.hpp"
#include "ocs/space.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ocs {

// Ordered (name, value) pairs with distinct names, e.g. X=1,Z=0. Ordering is
// lexicographic over the pair sequence, which gives every scan that iterates
// assignments a deterministic tie-break order.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<std::pair<std::string, std::int64_t>> items);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const std::vector<std::pair<std::string, std::int64_t>>& items() const { return items_; }
  std::vector<std::string> names() const;
  std::vector<std::int64_t> values() const;
  std::optional<std::int64_t> value_of(const std::string& name) const;

  Assignment restricted_to(const std::vector<std::string>& names) const;
  Assignment merged_with(const Assignment& other) const;  // names must stay distinct

  bool operator==(const Assignment& o) const { return items_ == o.items_; }
  bool operator!=(const Assignment& o) const { return !(*this == o); }
  bool operator<(const Assignment& o) const { return items_ < o.items_; }

  std::string to_string() const;  // "X=1,Z=0"; "()" when empty

 private:
  std::vector<std::pair<std::string, std::int64_t>> items_;
};

// Integer-valued function of the atoms, stored densely in atom order.
class RandomVariable {
 public:
  RandomVariable(std::string name, SpacePtr space, std::vector<std::int64_t> values);

  static RandomVariable constant(SpacePtr space, std::string name, std::int64_t v);
  // Requires a value for every atom and no stray ids; throws IncompleteVariable.
  static RandomVariable from_map(SpacePtr space, std::string name,
                                 const std::map<std::string, std::int64_t>& by_atom);

  const std::string& name() const { return name_; }
  const SpacePtr& space() const { return space_; }
  std::int64_t value(std::size_t atom_index) const { return values_[atom_index]; }
  const std::vector<std::int64_t>& values() const { return values_; }

  std::vector<std::int64_t> image() const;  // sorted, unique, includes values on zero-mass atoms
  Event preimage(std::int64_t v) const;
  RandomVariable renamed(std::string name) const;

  // Same function of the atoms; names may differ.
  bool same_realization(const RandomVariable& o) const;

 private:
  std::string name_;
  SpacePtr space_;
  std::vector<std::int64_t> values_;
};

// Sparse exact distribution over value tuples: only tuples of positive
// probability are stored, so two laws agree iff their entries agree. Names
// may repeat (law of [X, X] is legal and supported on the diagonal).
class Law {
 public:
  Law(std::vector<std::string> names, std::map<std::vector<std::int64_t>, Rational> entries);

  const std::vector<std::string>& names() const { return names_; }
  const std::map<std::vector<std::int64_t>, Rational>& entries() const { return entries_; }
  Rational prob(const std::vector<std::int64_t>& tuple) const;  // 0 when absent
  Rational total() const;

  bool operator==(const Law& o) const { return names_ == o.names_ && entries_ == o.entries_; }
  bool operator!=(const Law& o) const { return !(*this == o); }

 private:
  std::vector<std::string> names_;
  std::map<std::vector<std::int64_t>, Rational> entries_;
};

// Entry-wise equality ignoring variable names (a synthesized outcome and its
// source potential outcome carry different names but may share a law).
bool same_entries(const Law& a, const Law& b);

// Joint law of variables on one space. Throws MixedSpaces.
Law law(const std::vector<RandomVariable>& vars);

// Law of `targets` given an event of positive measure on the same space.
// Throws ZeroMeasureConditioningEvent / MixedSpaces.
Law conditional_law(const std::vector<RandomVariable>& targets, const Event& given);

Rational expectation(const RandomVariable& v);
Rational conditional_expectation(const RandomVariable& v, const Event& given);

// 1 where every variable matches the assignment, 0 elsewhere. The assignment
// must cover exactly the variables' names; throws NameMismatch.
RandomVariable indicator(const std::vector<RandomVariable>& vars, const Assignment& a);

// Exact independence: P(a = u, b = v) = P(a = u) P(b = v) for every value pair.
bool independent(const RandomVariable& a, const RandomVariable& b);

// Average observed effect E[y | x = 1] - E[y | x = 0], exact. Requires x with
// image within {0, 1} (NonBinaryTreatment) and both arms of positive measure
// (DegenerateTreatment).
Rational aoe(const RandomVariable& x, const RandomVariable& y);

}  // namespace ocs
