// Copyright 2026 The qdrift-lab Authors
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

#include "qdriftlab/table.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qdriftlab/errors.hpp"
#include "qdriftlab/version.hpp"

namespace qdriftlab {

std::string format_real(double v) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, result.ptr);
}

std::string format_count(double integer_valued) {
  if (!std::isfinite(integer_valued) || integer_valued < 0 ||
      std::nearbyint(integer_valued) != integer_valued) {
    throw DomainError("format_count: value is not a nonnegative integer");
  }
  if (integer_valued >= 0x1p120) {
    return format_real(integer_valued);  // beyond 128-bit range; keep exponent form
  }
  auto v = static_cast<unsigned __int128>(integer_valued);
  if (v == 0) return "0";
  std::string digits;
  while (v > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {digits.rbegin(), digits.rend()};
}

Cell text_cell(std::string s) { return {Cell::Kind::Text, std::move(s), 0.0, false}; }

Cell real_cell(double v) { return {Cell::Kind::Real, format_real(v), v, false}; }

Cell count_cell(double integer_valued) {
  return {Cell::Kind::Count, format_count(integer_valued), integer_valued, false};
}

Cell flag_cell(bool b) { return {Cell::Kind::Flag, b ? "true" : "false", 0.0, b}; }

void write_csv(const Table& table, std::ostream& out) {
  out << "# qdrift-lab v" << kVersion << " schema=" << table.schema << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << row[c].text;
    }
    out << "\n";
  }
}

void write_json(const Table& table, std::ostream& out,
                const std::vector<std::pair<std::string, std::string>>& meta) {
  nlohmann::ordered_json doc;
  doc["tool"] = "qdrift-lab";
  doc["version"] = kVersion;
  doc["schema"] = table.schema;
  for (const auto& [key, value] : meta) doc[key] = value;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
      const Cell& cell = row[c];
      const std::string& key = table.columns[c];
      switch (cell.kind) {
        case Cell::Kind::Text: obj[key] = cell.text; break;
        case Cell::Kind::Real: obj[key] = cell.value; break;
        case Cell::Kind::Count:
          if (cell.value <= 0x1p63) {
            obj[key] = static_cast<std::uint64_t>(cell.value);
          } else {
            obj[key] = cell.value;
          }
          break;
        case Cell::Kind::Flag: obj[key] = cell.flag; break;
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

}  // namespace qdriftlab
