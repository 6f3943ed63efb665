// Copyright 2026 The closedfit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "closedfit/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

#include "closedfit/error.hpp"

namespace closedfit {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back(trim(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.emplace_back(trim(cell));
  return cells;
}

std::optional<double> to_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

struct Row {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

}  // namespace

Dataset parse_dataset(std::istream& in, std::string_view source,
                      Support support, const std::optional<std::string>& column) {
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;
    rows.push_back({line_no, split_csv(view)});
  }
  const std::string where(source);
  if (rows.empty()) {
    throw Error(ErrorCode::kInvalidArgument, where + ": no observations");
  }

  std::vector<std::string> header = rows.front().cells;
  std::size_t first_data = 1;
  if (header.size() == 1 && to_number(header[0]) && !column) {
    header = {"value"};
    first_data = 0;
  }

  std::size_t col = 0;
  if (column) {
    bool found = false;
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (header[k] == *column) {
        col = k;
        found = true;
        break;
      }
    }
    if (!found) {
      throw Error(ErrorCode::kInvalidArgument,
                  where + ": no column named '" + *column + "'");
    }
  } else if (header.size() > 1) {
    bool found = false;
    for (std::size_t k = 0; k < header.size() && !found; ++k) {
      bool numeric = first_data < rows.size();
      for (std::size_t r = first_data; r < rows.size() && numeric; ++r) {
        numeric = k < rows[r].cells.size() && to_number(rows[r].cells[k]);
      }
      if (numeric) {
        col = k;
        found = true;
      }
    }
    if (!found && first_data < rows.size()) {
      throw Error(ErrorCode::kParse,
                  where + ": no column is entirely numeric; pass a column name");
    }
  }

  std::vector<double> values;
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const Row& row = rows[r];
    const std::string prefix = where + ": line " + std::to_string(row.line);
    if (col >= row.cells.size()) {
      throw Error(ErrorCode::kParse, prefix + ": missing column '" +
                                         header[col] + "'");
    }
    const auto v = to_number(row.cells[col]);
    if (!v) {
      throw Error(ErrorCode::kParse,
                  prefix + ": cannot parse '" + row.cells[col] + "'");
    }
    const bool ok = support == Support::kUnitInterval
                        ? (*v > 0.0 && *v < 1.0)
                        : (*v > 0.0 && std::isfinite(*v));
    if (!ok) {
      throw Error(ErrorCode::kDomain,
                  prefix + ": value " + row.cells[col] + " lies outside " +
                      (support == Support::kUnitInterval ? "(0, 1)"
                                                         : "(0, inf)"));
    }
    values.push_back(*v);
  }
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, where + ": no observations");
  }
  return {where, header[col], Sample(std::move(values), support)};
}

Dataset load_dataset(const std::string& path, Support support,
                     const std::optional<std::string>& column) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return parse_dataset(in, path, support, column);
}

}  // namespace closedfit
