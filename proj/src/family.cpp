#include "ocs/family.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace ocs {

PotentialOutcomeFamily::PotentialOutcomeFamily(
    std::string target, std::vector<std::string> index_names,
    std::vector<std::vector<std::int64_t>> index_images,
    std::map<std::vector<std::int64_t>, RandomVariable> members)
    : target_(std::move(target)),
      index_names_(std::move(index_names)),
      index_images_(std::move(index_images)) {
  if (target_.empty()) throw UnknownTarget("family needs a target name");
  if (index_names_.size() != index_images_.size()) {
    throw UnknownIndexVariable("family over '" + target_ + "': index names and images differ in length");
  }
  std::set<std::string> seen;
  for (const std::string& n : index_names_) {
    if (!seen.insert(n).second) {
      throw UnknownIndexVariable("family over '" + target_ + "': repeated index '" + n + "'");
    }
  }
  for (auto& img : index_images_) {
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (img.empty()) {
      throw UnknownIndexVariable("family over '" + target_ + "': empty index image");
    }
  }
  for (auto& [key, member] : members) {
    if (key.size() != index_names_.size()) {
      throw UnknownIndexVariable("family member key arity mismatch for target '" + target_ +
                                 "'");
    }
    for (std::size_t i = 0; i < key.size(); ++i) {
      const auto& img = index_images_[i];
      if (!std::binary_search(img.begin(), img.end(), key[i])) {
        throw UnknownIndexVariable("family member key value " + std::to_string(key[i]) +
                                   " outside the image of '" + index_names_[i] + "'");
      }
    }
    if (!space_) {
      space_ = member.space();
    } else if (member.space().get() != space_.get()) {
      throw MixedSpaces("family members for '" + target_ + "' live on different spaces");
    }
    members_.emplace(key, member.renamed(member_name(target_, index_names_, key)));
  }
  if (!space_) {
    throw MixedSpaces("family for '" + target_ + "' has no members to take a space from");
  }
}

const RandomVariable* PotentialOutcomeFamily::member(
    const std::vector<std::int64_t>& key) const {
  auto it = members_.find(key);
  return it == members_.end() ? nullptr : &it->second;
}

Assignment PotentialOutcomeFamily::key_assignment(const std::vector<std::int64_t>& key) const {
  std::vector<std::pair<std::string, std::int64_t>> items;
  items.reserve(key.size());
  for (std::size_t i = 0; i < key.size(); ++i) items.emplace_back(index_names_[i], key[i]);
  return Assignment(std::move(items));
}

std::vector<std::vector<std::int64_t>> PotentialOutcomeFamily::product_image() const {
  std::vector<std::vector<std::int64_t>> keys;
  std::size_t total = 1;
  for (const auto& img : index_images_) total *= img.size();
  keys.reserve(total);
  std::vector<std::size_t> digits(index_images_.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<std::int64_t> key;
    key.reserve(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) key.push_back(index_images_[i][digits[i]]);
    keys.push_back(std::move(key));
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < index_images_[i].size()) break;
      digits[i] = 0;
    }
  }
  return keys;
}

bool PotentialOutcomeFamily::is_total() const {
  std::size_t total = 1;
  for (const auto& img : index_images_) total *= img.size();
  return members_.size() == total;
}

std::string PotentialOutcomeFamily::member_name(const std::string& target,
                                                const std::vector<std::string>& index_names,
                                                const std::vector<std::int64_t>& key) {
  if (index_names.empty()) return target;
  std::ostringstream os;
  os << target << "{";
  for (std::size_t i = 0; i < index_names.size(); ++i) {
    if (i) os << ",";
    os << index_names[i] << "=" << key[i];
  }
  os << "}";
  return os.str();
}

}  // namespace ocs
