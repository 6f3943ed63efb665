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

#ifndef CLOSEDFIT_MODEL_HPP_
#define CLOSEDFIT_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "closedfit/rng.hpp"

namespace closedfit {

/// Beta shape pair. Plain aggregate; `validated()` enforces alpha, beta > 0.
struct BetaParams {
  double alpha = 1.0;
  double beta = 1.0;

  bool is_valid() const noexcept;
  /// Returns *this, or throws Error(kInvalidArgument).
  const BetaParams& validated() const;

  friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

/// (mu, sigma) of the weighted exponential family; `kronecker` is the
/// a == b branch indicator.
struct WeightedParams {
  double mu = 1.0;
  double sigma = 1.0;
  bool kronecker = false;

  friend bool operator==(const WeightedParams&,
                         const WeightedParams&) = default;
};

/// Grid coordinate of the (r, s) estimator family.
struct RSPair {
  double r = 1.0;
  double s = 1.0;

  friend bool operator==(const RSPair&, const RSPair&) = default;
  friend auto operator<=>(const RSPair&, const RSPair&) = default;
};

enum class Support { kUnitInterval, kPositive };

// Observations with a validated support. Values keep their input order.
class Sample {
 public:
  /// Throws Error(kDomain) naming the first offending index, or
  /// Error(kInvalidArgument) when `values` is empty.
  Sample(std::vector<double> values, Support support);

  static Sample unit(std::vector<double> values) {
    return Sample(std::move(values), Support::kUnitInterval);
  }
  static Sample positive(std::vector<double> values) {
    return Sample(std::move(values), Support::kPositive);
  }

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  Support support() const noexcept { return support_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
  Support support_;
};

struct InformationCriteria {
  double aic = 0.0;
  double bic = 0.0;
};

/// aic = -2 loglik + 2k, bic = -2 loglik + k ln n.
InformationCriteria information_criteria(double loglik, std::size_t k,
                                         std::size_t n);

struct FitResult {
  std::string method;
  std::variant<BetaParams, WeightedParams> params;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  std::optional<RSPair> selected_rs;
  std::optional<int> iterations;
  /// Profile grid points rejected during selection.
  std::vector<RSPair> skipped_rs;

  const BetaParams& beta_params() const { return std::get<BetaParams>(params); }
  const WeightedParams& weighted_params() const {
    return std::get<WeightedParams>(params);
  }
};

double beta_logpdf(double x, const BetaParams& params);

/// Sum of beta_logpdf over the sample (unit-interval samples only).
double beta_loglik(const Sample& sample, const BetaParams& params);

// The beta log-likelihood depends on the data only through these sums, so
// profile scans evaluate it in O(1) per candidate.
struct BetaSufficientStats {
  double sum_log_x = 0.0;
  double sum_log1m_x = 0.0;
  std::size_t n = 0;

  static BetaSufficientStats from(const Sample& sample);
  double loglik(const BetaParams& params) const;
};

/// Fills loglik / aic / bic of a beta fit with k = 2.
FitResult make_beta_fit(std::string method, const BetaParams& params,
                        const Sample& sample);

/// One Beta(alpha, beta) draw as G1 / (G1 + G2); draws landing on 0 or 1
/// in floating point are redrawn.
double beta_draw(const BetaParams& params, RngStream& rng);

Sample beta_sample(const BetaParams& params, std::size_t n, RngStream& rng);

}  // namespace closedfit

#endif  // CLOSEDFIT_MODEL_HPP_
