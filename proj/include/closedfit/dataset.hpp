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

#ifndef CLOSEDFIT_DATASET_HPP_
#define CLOSEDFIT_DATASET_HPP_

#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "closedfit/model.hpp"

namespace closedfit {

struct Dataset {
  std::string source;
  std::string column;
  Sample sample;
};

/// Reads a UTF-8 CSV with a header row. The column is `column` when given,
/// the only column of a one-column file, or else the first column whose
/// every entry parses as a number. A one-column file may omit the header.
/// Blank lines are ignored. Errors name the 1-based file line:
/// Error(kParse) for unparsable cells, Error(kDomain) for values outside
/// the support, Error(kInvalidArgument, "no observations") for files
/// without data rows, Error(kIo) when the file cannot be opened.
Dataset parse_dataset(std::istream& in, std::string_view source,
                      Support support,
                      const std::optional<std::string>& column = std::nullopt);
Dataset load_dataset(const std::string& path, Support support,
                     const std::optional<std::string>& column = std::nullopt);

}  // namespace closedfit

#endif  // CLOSEDFIT_DATASET_HPP_
