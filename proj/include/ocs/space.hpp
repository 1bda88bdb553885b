#pragma once

#include "ocs/errors.hpp"
#include "ocs/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ocs {

// A point mass. Zero-mass atoms are legal: they carry variable values even
// though no event containing only them has positive measure.
struct Atom {
  std::string id;
  Rational mass;
};

class FiniteProbabilitySpace;
using SpacePtr = std::shared_ptr<const FiniteProbabilitySpace>;

// An immutable finite probability space: an ordered list of atoms whose
// masses sum to exactly 1. The power-set sigma-algebra is implied, never
// materialized; events are just atom subsets.
class FiniteProbabilitySpace {
 public:
  // Throws DuplicateAtomId / InvalidAtomId / NegativeMass / MassSumNotOne.
  // An empty atom list fails the mass check (deficit 1).
  static SpacePtr make(std::string label, std::vector<Atom> atoms);

  const std::string& label() const { return label_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const Atom& atom(std::size_t i) const { return atoms_[i]; }
  std::optional<std::size_t> index_of(const std::string& id) const;

 private:
  FiniteProbabilitySpace(std::string label, std::vector<Atom> atoms);

  std::string label_;
  std::vector<Atom> atoms_;
  std::unordered_map<std::string, std::size_t> index_;
};

// A subset of one space's atoms. Set algebra is defined only between events
// of the same space (pointer identity) and throws ForeignEvent otherwise.
class Event {
 public:
  // Throws ForeignEvent if any id is not an atom of the space.
  Event(SpacePtr space, const std::vector<std::string>& atom_ids);
  // exact match for braced literals, which would otherwise collide with the
  // mask overload through the pointer-to-bool conversion
  Event(SpacePtr space, std::initializer_list<const char*> atom_ids);
  Event(SpacePtr space, std::vector<bool> mask);

  static Event none(SpacePtr space);
  static Event all(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const std::vector<bool>& mask() const { return mask_; }
  bool contains(std::size_t atom_index) const { return mask_[atom_index]; }
  std::size_t member_count() const;
  std::vector<std::string> member_ids() const;  // in atom order

  Event complement() const;
  Event operator&(const Event& o) const;
  Event operator|(const Event& o) const;
  Event operator-(const Event& o) const;
  bool operator==(const Event& o) const;
  bool operator!=(const Event& o) const { return !(*this == o); }
  bool is_subset_of(const Event& o) const;
  bool empty() const;

 private:
  void check_same_space(const Event& o) const;

  SpacePtr space_;
  std::vector<bool> mask_;
};

// Exact measure of an event. The two-argument form checks that the event
// actually belongs to `space` and throws ForeignEvent if not.
Rational measure(const Event& e);
Rational measure(const SpacePtr& space, const Event& e);
Rational measure(const SpacePtr& space, const std::vector<std::string>& atom_ids);

// Product of two spaces. Atoms are ordered left-major (the right factor
// cycles fastest) and named "<left>⊗<right>"; masses multiply, which is what
// makes anything lifted from different factors independent.
struct ProductSpace {
  SpacePtr space;
  SpacePtr left;
  SpacePtr right;

  std::size_t left_index(std::size_t k) const { return k / right->size(); }
  std::size_t right_index(std::size_t k) const { return k % right->size(); }
};

ProductSpace product(const SpacePtr& a, const SpacePtr& b);

}  // namespace ocs
