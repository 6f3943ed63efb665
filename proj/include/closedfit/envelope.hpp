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

#ifndef CLOSEDFIT_ENVELOPE_HPP_
#define CLOSEDFIT_ENVELOPE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "closedfit/model.hpp"

namespace closedfit {

struct EnvelopeRow {
  std::size_t rank = 0;       // 1-based order statistic
  double theoretical = 0.0;   // median of the simulated order statistic
  double observed = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct EnvelopeOptions {
  std::size_t simulations = 1000;
  std::uint64_t seed = 1;
  double coverage = 0.95;  // pointwise band, equal tails
};

/// Simulates `simulations` samples of size n at `fitted` (stream m derived
/// from (seed, m)) and summarizes each order statistic with type-7
/// quantiles.
std::vector<EnvelopeRow> compute_envelope(const Sample& sample,
                                          const BetaParams& fitted,
                                          const EnvelopeOptions& options = {});

/// Linear-interpolation sample quantile (type 7) of sorted data.
double quantile_sorted(std::span<const double> sorted, double p);

}  // namespace closedfit

#endif  // CLOSEDFIT_ENVELOPE_HPP_
