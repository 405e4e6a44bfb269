// Copyright 2026 The Rankbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tabular output shared by the CLI and the experiment harness.

#ifndef RANKBENCH_TABLE_HPP_
#define RANKBENCH_TABLE_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rankbench/io.hpp"

namespace rankbench {

using Cell = std::variant<std::string, double, std::int64_t>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Digits after the decimal point for floating cells.
  int precision = 6;
};

inline std::string FormatFixed(double v, int precision) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  std::string s(buf);
  // Avoid "-0.000000".
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') {
    s.erase(0, 1);
  }
  return s;
}

inline std::string FormatCell(const Cell& cell, int precision) {
  if (const auto* s = std::get_if<std::string>(&cell)) return io::CsvField(*s);
  if (const auto* d = std::get_if<double>(&cell)) return FormatFixed(*d, precision);
  return std::to_string(std::get<std::int64_t>(cell));
}

// Fixed-point CSV; NaN cells are left empty.
inline void WriteCsv(std::ostream& out, const Table& table) {
  for (size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << io::CsvField(table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << FormatCell(row[c], table.precision);
    }
    out << '\n';
  }
}

// Array of row objects. Doubles are rounded to the table precision so the
// JSON and CSV forms carry the same values; NaN becomes null.
inline nlohmann::ordered_json ToJson(const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
      const Cell& cell = row[c];
      if (const auto* s = std::get_if<std::string>(&cell)) {
        obj[table.columns[c]] = *s;
      } else if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isnan(*d)) {
          obj[table.columns[c]] = nullptr;
        } else {
          obj[table.columns[c]] = std::stod(FormatFixed(*d, table.precision));
        }
      } else {
        obj[table.columns[c]] = std::get<std::int64_t>(cell);
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

}  // namespace rankbench

#endif  // RANKBENCH_TABLE_HPP_
