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

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "likertib/error.hpp"
#include "likertib/partition.hpp"

namespace likertib {

struct AgreementReport {
  std::vector<std::string> concordant_items;
  std::vector<std::string> discordant_items;
  std::vector<std::pair<std::size_t, std::size_t>> matched_group_pairs;  // (factor, cluster)
  double pairwise_agreement = 1.0;                                       // Rand index
  bool exact_match = true;
};

/// Fraction of unordered item pairs that both partitions treat alike
/// (together in both or apart in both). `a` and `b` must be aligned.
inline double rand_index(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  const std::size_t n = a.size();
  if (n < 2) return 1.0;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((a[i] == a[j]) == (b[i] == b[j])) ++agree;
  return static_cast<double>(agree) / static_cast<double>(n * (n - 1) / 2);
}

/// Matches factor groups to cluster groups greedily by overlap (largest
/// first) and calls an item concordant when its factor and cluster were
/// matched to each other. Overlap ties go to the pair whose shared items
/// come first in sorted item order, which depends on neither the argument
/// order nor the group numbering.
inline AgreementReport compare(const Partition& factors, const Partition& clusters) {
  std::map<std::string, std::size_t> fpos, cpos;
  for (std::size_t i = 0; i < factors.items.size(); ++i)
    if (!fpos.emplace(factors.items[i], i).second)
      throw InvalidInput("compare: duplicate item '" + factors.items[i] + "'");
  for (std::size_t i = 0; i < clusters.items.size(); ++i)
    if (!cpos.emplace(clusters.items[i], i).second)
      throw InvalidInput("compare: duplicate item '" + clusters.items[i] + "'");

  std::vector<std::string> diff;
  for (const auto& [id, _] : fpos)
    if (!cpos.count(id)) diff.push_back(id);
  for (const auto& [id, _] : cpos)
    if (!fpos.count(id)) diff.push_back(id);
  if (!diff.empty()) {
    std::sort(diff.begin(), diff.end());
    std::string list;
    for (const auto& d : diff) list += (list.empty() ? "" : ", ") + d;
    throw InvalidInput("compare: partitions cover different items (symmetric difference: " + list + ")");
  }

  // Sorted item order (std::map iteration) is the canonical order.
  std::vector<std::size_t> fg, cg;
  std::vector<std::string> sorted_ids;
  for (const auto& [id, i] : fpos) {
    sorted_ids.push_back(id);
    fg.push_back(factors.groups[i]);
    cg.push_back(clusters.groups[cpos.at(id)]);
  }

  struct Cell {
    std::size_t count = 0;
    std::size_t first = 0;  // earliest canonical position in the overlap
  };
  std::map<std::pair<std::size_t, std::size_t>, Cell> overlap;
  for (std::size_t k = 0; k < sorted_ids.size(); ++k) {
    auto [it, inserted] = overlap.try_emplace({fg[k], cg[k]});
    if (inserted) it->second.first = k;
    ++it->second.count;
  }
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> cells;  // -count, first, f, c
  for (const auto& [key, cell] : overlap) cells.emplace_back(cell.count, cell.first, key.first, key.second);
  std::sort(cells.begin(), cells.end(), [](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
    return std::get<1>(x) < std::get<1>(y);
  });

  AgreementReport rep;
  std::set<std::size_t> used_f, used_c;
  std::set<std::pair<std::size_t, std::size_t>> matched;
  for (const auto& [count, first, f, c] : cells) {
    if (used_f.count(f) || used_c.count(c)) continue;
    used_f.insert(f);
    used_c.insert(c);
    matched.insert({f, c});
  }
  rep.matched_group_pairs.assign(matched.begin(), matched.end());

  for (std::size_t i = 0; i < factors.items.size(); ++i) {
    const std::string& id = factors.items[i];
    const std::size_t c = clusters.groups[cpos.at(id)];
    if (matched.count({factors.groups[i], c}))
      rep.concordant_items.push_back(id);
    else
      rep.discordant_items.push_back(id);
  }
  rep.exact_match = rep.discordant_items.empty();
  rep.pairwise_agreement = rand_index(fg, cg);
  return rep;
}

}  // namespace likertib
