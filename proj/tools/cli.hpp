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

#ifndef CLOSEDFIT_TOOLS_CLI_HPP_
#define CLOSEDFIT_TOOLS_CLI_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace closedfit::cli {

/// Runs the `cfit` command line. Returns the process exit code: 0 on
/// success, 1 on a runtime failure, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

struct FitReportRow {
  std::string estimator;  // canonical key
  std::string status;     // "ok" or a status name
  double alpha = 0.0;
  double beta = 0.0;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  double r = 0.0;  // NaN when not applicable
  double s = 0.0;
  double se_alpha = 0.0;
  double se_beta = 0.0;
  double alpha_lower = 0.0;
  double alpha_upper = 0.0;
  double beta_lower = 0.0;
  double beta_upper = 0.0;
  double level = 0.0;
  std::string message;
};

struct FitReport {
  std::string source;
  std::string column;
  std::size_t n = 0;
  std::vector<FitReportRow> rows;
};

/// CSV keeps the rows only; JSON also carries source, column and n.
/// Numbers use 17 significant digits, so re-reading is exact.
void write_fit_report_csv(std::ostream& out, const FitReport& report);
void write_fit_report_json(std::ostream& out, const FitReport& report);
/// Accepts either format (JSON when the first non-blank byte is '{').
FitReport read_fit_report(const std::string& path);

}  // namespace closedfit::cli

#endif  // CLOSEDFIT_TOOLS_CLI_HPP_
