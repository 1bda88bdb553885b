#include "ocs/space.hpp"

#include <algorithm>
#include <utility>

namespace ocs {

FiniteProbabilitySpace::FiniteProbabilitySpace(std::string label, std::vector<Atom> atoms)
    : label_(std::move(label)), atoms_(std::move(atoms)) {
  index_.reserve(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) index_.emplace(atoms_[i].id, i);
}

SpacePtr FiniteProbabilitySpace::make(std::string label, std::vector<Atom> atoms) {
  Rational total = 0;
  std::unordered_map<std::string, std::size_t> seen;
  seen.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (a.id.empty()) throw InvalidAtomId("empty atom id in space '" + label + "'");
    if (!seen.emplace(a.id, 0).second) {
      throw DuplicateAtomId("duplicate atom id '" + a.id + "' in space '" + label + "'");
    }
    if (a.mass < 0) {
      throw NegativeMass("atom '" + a.id + "' has negative mass " + to_string(a.mass));
    }
    total += a.mass;
  }
  if (total != 1) {
    const Rational deficit = Rational(1) - total;
    throw MassSumNotOne("masses in space '" + label + "' sum to " + to_string(total) +
                            ", off by " + to_string(deficit),
                        deficit);
  }
  return SpacePtr(new FiniteProbabilitySpace(std::move(label), std::move(atoms)));
}

std::optional<std::size_t> FiniteProbabilitySpace::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Event::Event(SpacePtr space, const std::vector<std::string>& atom_ids)
    : space_(std::move(space)), mask_(space_->size(), false) {
  for (const std::string& id : atom_ids) {
    auto idx = space_->index_of(id);
    if (!idx) {
      throw ForeignEvent("atom '" + id + "' is not in space '" + space_->label() + "'");
    }
    mask_[*idx] = true;
  }
}

Event::Event(SpacePtr space, std::initializer_list<const char*> atom_ids)
    : Event(std::move(space), std::vector<std::string>(atom_ids.begin(), atom_ids.end())) {}

Event::Event(SpacePtr space, std::vector<bool> mask)
    : space_(std::move(space)), mask_(std::move(mask)) {
  if (mask_.size() != space_->size()) {
    throw ForeignEvent("event mask size does not match space '" + space_->label() + "'");
  }
}

Event Event::none(SpacePtr space) {
  auto n = space->size();
  return Event(std::move(space), std::vector<bool>(n, false));
}

Event Event::all(SpacePtr space) {
  auto n = space->size();
  return Event(std::move(space), std::vector<bool>(n, true));
}

std::size_t Event::member_count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<std::string> Event::member_ids() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i]) out.push_back(space_->atom(i).id);
  }
  return out;
}

void Event::check_same_space(const Event& o) const {
  if (space_.get() != o.space_.get()) {
    throw ForeignEvent("events belong to different spaces ('" + space_->label() + "' vs '" +
                       o.space_->label() + "')");
  }
}

Event Event::complement() const {
  std::vector<bool> m(mask_);
  m.flip();
  return Event(space_, std::move(m));
}

Event Event::operator&(const Event& o) const {
  check_same_space(o);
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] && o.mask_[i];
  return Event(space_, std::move(m));
}

Event Event::operator|(const Event& o) const {
  check_same_space(o);
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] || o.mask_[i];
  return Event(space_, std::move(m));
}

Event Event::operator-(const Event& o) const {
  check_same_space(o);
  std::vector<bool> m(mask_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = mask_[i] && !o.mask_[i];
  return Event(space_, std::move(m));
}

bool Event::operator==(const Event& o) const {
  return space_.get() == o.space_.get() && mask_ == o.mask_;
}

bool Event::is_subset_of(const Event& o) const {
  check_same_space(o);
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    if (mask_[i] && !o.mask_[i]) return false;
  }
  return true;
}

bool Event::empty() const {
  return std::none_of(mask_.begin(), mask_.end(), [](bool b) { return b; });
}

Rational measure(const Event& e) {
  Rational total = 0;
  const auto& atoms = e.space()->atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (e.contains(i)) total += atoms[i].mass;
  }
  return total;
}

Rational measure(const SpacePtr& space, const Event& e) {
  if (e.space().get() != space.get()) {
    throw ForeignEvent("event belongs to space '" + e.space()->label() + "', not '" +
                       space->label() + "'");
  }
  return measure(e);
}

Rational measure(const SpacePtr& space, const std::vector<std::string>& atom_ids) {
  return measure(Event(space, atom_ids));
}

ProductSpace product(const SpacePtr& a, const SpacePtr& b) {
  std::vector<Atom> atoms;
  atoms.reserve(a->size() * b->size());
  for (const Atom& x : a->atoms()) {
    for (const Atom& y : b->atoms()) {
      atoms.push_back(Atom{x.id + "⊗" + y.id, x.mass * y.mass});
    }
  }
  auto space =
      FiniteProbabilitySpace::make(a->label() + "⊗" + b->label(), std::move(atoms));
  return ProductSpace{std::move(space), a, b};
}

}  // namespace ocs
