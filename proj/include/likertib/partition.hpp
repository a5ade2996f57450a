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
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "likertib/error.hpp"

namespace likertib {

/// Assignment of item identifiers to groups (factors or clusters).
struct Partition {
  std::vector<std::string> items;
  std::vector<std::size_t> groups;  // groups[i] is the group of items[i]
  std::size_t group_count = 0;

  Partition() = default;
  Partition(std::vector<std::string> item_ids, std::vector<std::size_t> group_of, std::size_t count)
      : items(std::move(item_ids)), groups(std::move(group_of)), group_count(count) {
    if (items.size() != groups.size()) throw InvalidInput("partition: items/groups length mismatch");
    for (auto g : groups)
      if (g >= group_count) throw InvalidInput("partition: group index out of range");
  }

  std::size_t size() const { return items.size(); }

  std::vector<std::string> members(std::size_t group) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (groups[i] == group) out.push_back(items[i]);
    return out;
  }

  std::vector<std::size_t> empty_groups() const {
    std::vector<bool> used(group_count, false);
    for (auto g : groups) used[g] = true;
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < group_count; ++g)
      if (!used[g]) out.push_back(g);
    return out;
  }

  std::size_t nonempty_groups() const { return group_count - empty_groups().size(); }

  /// Group labels renumbered by first appearance in item order, empty groups
  /// dropped. Two partitions describe the same grouping iff their items and
  /// canonical labels agree.
  std::vector<std::size_t> canonical_labels() const {
    std::unordered_map<std::size_t, std::size_t> relabel;
    std::vector<std::size_t> out;
    out.reserve(groups.size());
    for (auto g : groups) {
      auto [it, inserted] = relabel.try_emplace(g, relabel.size());
      out.push_back(it->second);
    }
    return out;
  }

  bool same_grouping(const Partition& other) const {
    return items == other.items && canonical_labels() == other.canonical_labels();
  }
};

}  // namespace likertib
