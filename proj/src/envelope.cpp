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

#include "closedfit/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "closedfit/error.hpp"
#include "closedfit/rng.hpp"

namespace closedfit {

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty() || !(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "quantile needs data and p in [0, 1]");
  }
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<EnvelopeRow> compute_envelope(const Sample& sample,
                                          const BetaParams& fitted,
                                          const EnvelopeOptions& options) {
  fitted.validated();
  if (sample.support() != Support::kUnitInterval) {
    throw Error(ErrorCode::kInvalidArgument,
                "envelopes need a unit-interval sample");
  }
  if (options.simulations < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "envelopes need at least two simulations");
  }
  if (!(options.coverage > 0.0 && options.coverage < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "coverage must lie in (0, 1)");
  }
  const std::size_t n = sample.size();
  const std::size_t m = options.simulations;

  // by_rank[k][j]: k-th order statistic of simulated sample j
  std::vector<std::vector<double>> by_rank(n, std::vector<double>(m));
  std::vector<double> draw(n);
  for (std::size_t j = 0; j < m; ++j) {
    RngStream rng = RngStream::derive(options.seed, j);
    for (auto& x : draw) x = beta_draw(fitted, rng);
    std::sort(draw.begin(), draw.end());
    for (std::size_t k = 0; k < n; ++k) by_rank[k][j] = draw[k];
  }

  std::vector<double> observed(sample.values().begin(), sample.values().end());
  std::sort(observed.begin(), observed.end());
  const double tail = (1.0 - options.coverage) / 2.0;

  std::vector<EnvelopeRow> rows(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& sims = by_rank[k];
    std::sort(sims.begin(), sims.end());
    rows[k] = {k + 1, quantile_sorted(sims, 0.5), observed[k],
               quantile_sorted(sims, tail), quantile_sorted(sims, 1.0 - tail)};
  }
  return rows;
}

}  // namespace closedfit
