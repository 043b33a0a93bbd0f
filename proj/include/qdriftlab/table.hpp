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

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace qdriftlab {

/// One typed cell of an output row; carries its own deterministic textual
/// form so CSV output is byte-stable.
struct Cell {
  enum class Kind { Text, Real, Count, Flag };
  Kind kind = Kind::Text;
  std::string text;
  double value = 0.0;
  bool flag = false;
};

Cell text_cell(std::string s);
Cell real_cell(double v);
Cell count_cell(double integer_valued);  // full decimal digits, no exponent
Cell flag_cell(bool b);

/// Shortest round-trip decimal form of a double.
std::string format_real(double v);

/// Exact decimal digits of an integer-valued double (via 128-bit integers).
std::string format_count(double integer_valued);

struct Table {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// `# qdrift-lab v<version> schema=<name>` comment line, a header row, then
/// one line per row; '.' decimal separator, no thousands separators.
void write_csv(const Table& table, std::ostream& out);

/// JSON mirror of the same rows plus tool/version/schema metadata and any
/// extra metadata pairs.
void write_json(const Table& table, std::ostream& out,
                const std::vector<std::pair<std::string, std::string>>& meta = {});

}  // namespace qdriftlab
