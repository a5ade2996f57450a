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

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "likertib/error.hpp"
#include "likertib/responses.hpp"

namespace likertib {

struct CsvOptions {
  int likert_min = 1;
  int likert_max = 5;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

}  // namespace detail

/// Reads a survey table: a header of item identifiers, then one respondent
/// per row with integer cells. Rows with any empty cell are dropped
/// (listwise deletion) and counted in ResponseMatrix::dropped_rows().
inline ResponseMatrix parse_csv(std::istream& in, const CsvOptions& opts = {}) {
  using Kind = CsvError::Kind;
  std::string line;
  std::size_t line_no = 0;

  std::vector<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (detail::trim(line).empty()) continue;
    std::unordered_set<std::string> seen;
    for (auto cell : detail::split_commas(line)) {
      if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') cell = cell.substr(1, cell.size() - 2);
      if (cell.empty()) throw CsvError(Kind::header, "empty item identifier in header", line_no);
      std::string id(cell);
      if (!seen.insert(id).second) throw CsvError(Kind::duplicate_item, "duplicate item identifier '" + id + "'", line_no);
      ids.push_back(std::move(id));
    }
    break;
  }
  if (ids.empty()) throw CsvError(Kind::header, "missing header row", line_no == 0 ? 1 : line_no);

  std::vector<int> values;
  std::size_t rows = 0;
  std::size_t dropped = 0;
  std::vector<int> row(ids.size());
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_commas(line);
    if (cells.size() > ids.size())
      throw CsvError(Kind::extra_cells,
                     "row has " + std::to_string(cells.size()) + " cells but the header has " + std::to_string(ids.size()),
                     line_no);
    bool missing = cells.size() < ids.size();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto cell = cells[c];
      if (cell.empty()) {
        missing = true;
        continue;
      }
      int v = 0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw CsvError(Kind::non_integer, "cell '" + std::string(cell) + "' for item '" + ids[c] + "' is not an integer",
                       line_no);
      if (v < opts.likert_min || v > opts.likert_max)
        throw CsvError(Kind::out_of_range,
                       "value " + std::to_string(v) + " for item '" + ids[c] + "' outside [" +
                           std::to_string(opts.likert_min) + ", " + std::to_string(opts.likert_max) + "]",
                       line_no);
      row[c] = v;
    }
    if (missing) {
      ++dropped;
      continue;
    }
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw CsvError(Kind::no_rows, "no complete respondent rows", line_no);
  ResponseMatrix m(std::move(ids), rows, std::move(values), opts.likert_min, opts.likert_max);
  m.set_dropped_rows(dropped);
  return m;
}

inline ResponseMatrix load_csv(const std::string& path, const CsvOptions& opts = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError(CsvError::Kind::io, "cannot open '" + path + "'", 0);
  return parse_csv(in, opts);
}

inline void write_csv(const ResponseMatrix& m, std::ostream& out) {
  for (std::size_t i = 0; i < m.items(); ++i) out << (i ? "," : "") << m.item_id(i);
  out << '\n';
  for (std::size_t r = 0; r < m.respondents(); ++r) {
    for (std::size_t i = 0; i < m.items(); ++i) out << (i ? "," : "") << m(r, i);
    out << '\n';
  }
}

inline std::string to_csv(const ResponseMatrix& m) {
  std::ostringstream out;
  write_csv(m, out);
  return out.str();
}

}  // namespace likertib
