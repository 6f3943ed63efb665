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

#ifndef CLOSEDFIT_MONTECARLO_HPP_
#define CLOSEDFIT_MONTECARLO_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "closedfit/estimators.hpp"
#include "closedfit/model.hpp"

namespace closedfit {

struct Scenario {
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t n = 100;
  std::size_t replications = 1000;
  std::uint64_t seed = 1;

  /// Throws Error(kInvalidArgument) unless alpha, beta > 0, n >= 2 and
  /// replications >= 1.
  void validate() const;
  BetaParams truth() const { return {alpha, beta}; }
};

/// The nine (alpha, beta) pairs of {0.5, 1, 2}^2, alpha-major.
std::vector<Scenario> grid_scenarios(std::size_t n, std::size_t replications,
                                     std::uint64_t seed);

/// Replication `index` draws its sample from RngStream::derive(seed, index).
Sample replication_sample(const Scenario& sc, std::size_t index);

struct ParamMetrics {
  double mare = 0.0;
  double rmse = 0.0;
  double se = 0.0;
};

struct Metrics {
  ParamMetrics alpha;
  ParamMetrics beta;
  std::size_t count = 0;
};

/// MARE = mean |t/t0 - 1|, RMSE = sqrt(mean (t - t0)^2),
/// SE = sqrt(mean (t - mean t)^2), all with divisor R = estimates.size().
/// Throws Error(kInvalidArgument) on an empty list.
Metrics compute_metrics(std::span<const BetaParams> estimates,
                        const BetaParams& truth);

struct MetricsRow {
  Scenario scenario;
  std::string estimator;
  ParamMetrics alpha;
  ParamMetrics beta;
  std::size_t successes = 0;
  /// Replications where the estimator threw. Metrics are NaN when every
  /// replication failed.
  std::size_t failures = 0;
};

struct NamedEstimator {
  std::string label;
  std::function<BetaParams(const Sample&)> fit;
};

NamedEstimator make_estimator(BetaMethod method,
                              const Grid& grid = Grid::default_grid());

struct RunOptions {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
};

/// All estimators see the same sample within a replication. Results are
/// reduced in replication order, so they do not depend on `threads`.
std::vector<MetricsRow> run_scenario(const Scenario& sc,
                                     std::span<const NamedEstimator> estimators,
                                     const RunOptions& options = {});
std::vector<MetricsRow> run_scenario(const Scenario& sc,
                                     std::span<const BetaMethod> methods,
                                     const Grid& grid = Grid::default_grid(),
                                     const RunOptions& options = {});

struct FrequencyTable {
  std::map<RSPair, std::size_t> counts;
  RSPair modal;
  double modal_share = 0.0;
  std::size_t successes = 0;
  std::size_t failures = 0;
};

/// Tallies the profile selector's (r, s) over the replications. Ties for
/// the mode go to the smallest (r, s).
FrequencyTable profile_frequencies(const Scenario& sc, const Grid& grid,
                                   const RunOptions& options = {});

}  // namespace closedfit

#endif  // CLOSEDFIT_MONTECARLO_HPP_
