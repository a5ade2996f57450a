// Copyright 2026 The likertib Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "likertib/error.hpp"

namespace likertib {

/// n respondents x p items of integer Likert responses, stored row-major
/// (one row per respondent). Item identifiers label the columns.
class ResponseMatrix {
 public:
  ResponseMatrix() = default;

  ResponseMatrix(std::vector<std::string> item_ids, std::size_t respondents,
                 std::vector<int> values, int likert_min = 1, int likert_max = 5)
      : item_ids_(std::move(item_ids)),
        respondents_(respondents),
        values_(std::move(values)),
        likert_min_(likert_min),
        likert_max_(likert_max) {
    if (likert_max_ <= likert_min_)
      throw InvalidInput("likert_max must exceed likert_min");
    if (values_.size() != respondents_ * item_ids_.size())
      throw InvalidInput("response value count does not match respondents x items");
    std::unordered_set<std::string> seen;
    for (const auto& id : item_ids_)
      if (!seen.insert(id).second) throw InvalidInput("duplicate item identifier '" + id + "'");
  }

  /// Builds from item-major rows: `by_item[i][r]` is respondent r's answer
  /// to item i. Handy in tests where data is written per item.
  static ResponseMatrix from_items(std::vector<std::string> item_ids,
                                   const std::vector<std::vector<int>>& by_item,
                                   int likert_min = 1, int likert_max = 5) {
    if (by_item.size() != item_ids.size()) throw InvalidInput("item count mismatch");
    const std::size_t n = by_item.empty() ? 0 : by_item.front().size();
    std::vector<int> values(n * by_item.size());
    for (std::size_t i = 0; i < by_item.size(); ++i) {
      if (by_item[i].size() != n) throw InvalidInput("ragged item columns");
      for (std::size_t r = 0; r < n; ++r) values[r * by_item.size() + i] = by_item[i][r];
    }
    return ResponseMatrix(std::move(item_ids), n, std::move(values), likert_min, likert_max);
  }

  std::size_t respondents() const { return respondents_; }
  std::size_t items() const { return item_ids_.size(); }
  const std::vector<std::string>& item_ids() const { return item_ids_; }
  const std::string& item_id(std::size_t i) const { return item_ids_[i]; }
  int likert_min() const { return likert_min_; }
  int likert_max() const { return likert_max_; }
  const std::vector<int>& values() const { return values_; }

  int operator()(std::size_t respondent, std::size_t item) const {
    return values_[respondent * item_ids_.size() + item];
  }

  std::vector<double> column(std::size_t item) const {
    std::vector<double> out(respondents_);
    for (std::size_t r = 0; r < respondents_; ++r) out[r] = (*this)(r, item);
    return out;
  }

  /// Rows dropped by listwise deletion when this matrix was loaded.
  std::size_t dropped_rows() const { return dropped_rows_; }
  void set_dropped_rows(std::size_t n) { dropped_rows_ = n; }

  std::size_t index_of(const std::string& id) const {
    for (std::size_t i = 0; i < item_ids_.size(); ++i)
      if (item_ids_[i] == id) return i;
    throw InvalidInput("unknown item '" + id + "'");
  }

  /// Column subset, in the order given.
  ResponseMatrix select(std::span<const std::size_t> items) const {
    std::vector<std::string> ids;
    ids.reserve(items.size());
    for (auto i : items) {
      if (i >= item_ids_.size()) throw InvalidInput("item index out of range");
      ids.push_back(item_ids_[i]);
    }
    std::vector<int> vals(respondents_ * items.size());
    for (std::size_t r = 0; r < respondents_; ++r)
      for (std::size_t k = 0; k < items.size(); ++k) vals[r * items.size() + k] = (*this)(r, items[k]);
    ResponseMatrix out(std::move(ids), respondents_, std::move(vals), likert_min_, likert_max_);
    out.dropped_rows_ = dropped_rows_;
    return out;
  }

  ResponseMatrix without(const std::string& id) const {
    std::vector<std::size_t> keep;
    const std::size_t drop = index_of(id);
    for (std::size_t i = 0; i < items(); ++i)
      if (i != drop) keep.push_back(i);
    return select(keep);
  }

  /// Throws with the (respondent, item) location of the first value
  /// outside [likert_min, likert_max].
  void check_range() const {
    for (std::size_t r = 0; r < respondents_; ++r)
      for (std::size_t i = 0; i < items(); ++i) {
        const int v = (*this)(r, i);
        if (v < likert_min_ || v > likert_max_)
          throw InvalidInput("response " + std::to_string(v) + " at respondent " +
                             std::to_string(r + 1) + ", item '" + item_ids_[i] +
                             "' outside [" + std::to_string(likert_min_) + ", " +
                             std::to_string(likert_max_) + "]");
      }
  }

  bool operator==(const ResponseMatrix& o) const {
    return item_ids_ == o.item_ids_ && respondents_ == o.respondents_ && values_ == o.values_ &&
           likert_min_ == o.likert_min_ && likert_max_ == o.likert_max_;
  }

 private:
  std::vector<std::string> item_ids_;
  std::size_t respondents_ = 0;
  std::vector<int> values_;
  int likert_min_ = 1;
  int likert_max_ = 5;
  std::size_t dropped_rows_ = 0;
};

}  // namespace likertib
