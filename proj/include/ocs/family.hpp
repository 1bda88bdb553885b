#pragma once

#include "ocs/random_variable.hpp"

#include <map>
#include <string>
#include <vector>

namespace ocs {

// A potential-outcome family for one target variable: for each assignment of
// the index variables, the variable the target would have been under that
// assignment. The family may be partial, both in the sense of indexing only a
// subset of a system's observables and of missing members; a family indexed
// by every observable with no missing member is "complete".
//
// Members are keyed by the index values in index-name order and stored under
// canonical names like "Y{X=0,Z=1}".
class PotentialOutcomeFamily {
 public:
  PotentialOutcomeFamily(std::string target,
                         std::vector<std::string> index_names,
                         std::vector<std::vector<std::int64_t>> index_images,
                         std::map<std::vector<std::int64_t>, RandomVariable> members);

  const std::string& target() const { return target_; }
  const std::vector<std::string>& index_names() const { return index_names_; }
  const std::vector<std::vector<std::int64_t>>& index_images() const { return index_images_; }
  const std::map<std::vector<std::int64_t>, RandomVariable>& members() const { return members_; }
  const SpacePtr& space() const { return space_; }

  const RandomVariable* member(const std::vector<std::int64_t>& key) const;  // null if missing
  Assignment key_assignment(const std::vector<std::int64_t>& key) const;

  // Every element of the product of the index images, most significant index
  // first (the last index cycles fastest).
  std::vector<std::vector<std::int64_t>> product_image() const;

  // One member per element of the product image.
  bool is_total() const;

  static std::string member_name(const std::string& target,
                                 const std::vector<std::string>& index_names,
                                 const std::vector<std::int64_t>& key);

 private:
  std::string target_;
  std::vector<std::string> index_names_;
  std::vector<std::vector<std::int64_t>> index_images_;
  std::map<std::vector<std::int64_t>, RandomVariable> members_;
  SpacePtr space_;
};

}  // namespace ocs
