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

#include "closedfit/model.hpp"

#include <cmath>
#include <string>

#include "closedfit/error.hpp"
#include "closedfit/special.hpp"

namespace closedfit {

bool BetaParams::is_valid() const noexcept {
  return alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) &&
         std::isfinite(beta);
}

const BetaParams& BetaParams::validated() const {
  if (!is_valid()) {
    throw Error(ErrorCode::kInvalidArgument,
                "beta shape parameters must be positive and finite, got (" +
                    std::to_string(alpha) + ", " + std::to_string(beta) + ")");
  }
  return *this;
}

Sample::Sample(std::vector<double> values, Support support)
    : values_(std::move(values)), support_(support) {
  if (values_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no observations");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double x = values_[i];
    const bool ok = support_ == Support::kUnitInterval
                        ? (x > 0.0 && x < 1.0)
                        : (x > 0.0 && std::isfinite(x));
    if (!ok) {
      throw Error(ErrorCode::kDomain,
                  "observation " + std::to_string(i + 1) + " (" +
                      std::to_string(x) + ") lies outside " +
                      (support_ == Support::kUnitInterval ? "(0, 1)"
                                                          : "(0, inf)"));
    }
  }
}

InformationCriteria information_criteria(double loglik, std::size_t k,
                                         std::size_t n) {
  if (k == 0 || n == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "information criteria need k >= 1 and n >= 1");
  }
  const double kk = static_cast<double>(k);
  return {-2.0 * loglik + 2.0 * kk,
          -2.0 * loglik + kk * std::log(static_cast<double>(n))};
}

double beta_logpdf(double x, const BetaParams& params) {
  params.validated();
  if (!(x > 0.0 && x < 1.0)) {
    throw Error(ErrorCode::kDomain,
                "beta density needs 0 < x < 1, got " + std::to_string(x));
  }
  return (params.alpha - 1.0) * std::log(x) +
         (params.beta - 1.0) * std::log1p(-x) -
         log_beta(params.alpha, params.beta);
}

double beta_loglik(const Sample& sample, const BetaParams& params) {
  double total = 0.0;
  for (double x : sample.values()) total += beta_logpdf(x, params);
  return total;
}

BetaSufficientStats BetaSufficientStats::from(const Sample& sample) {
  BetaSufficientStats stats;
  for (double x : sample.values()) {
    stats.sum_log_x += std::log(x);
    stats.sum_log1m_x += std::log1p(-x);
  }
  stats.n = sample.size();
  return stats;
}

double BetaSufficientStats::loglik(const BetaParams& params) const {
  return (params.alpha - 1.0) * sum_log_x + (params.beta - 1.0) * sum_log1m_x -
         static_cast<double>(n) * log_beta(params.alpha, params.beta);
}

FitResult make_beta_fit(std::string method, const BetaParams& params,
                        const Sample& sample) {
  FitResult fit;
  fit.method = std::move(method);
  fit.params = params;
  fit.loglik = beta_loglik(sample, params);
  const auto ic = information_criteria(fit.loglik, 2, sample.size());
  fit.aic = ic.aic;
  fit.bic = ic.bic;
  return fit;
}

double beta_draw(const BetaParams& params, RngStream& rng) {
  for (;;) {
    const double g1 = rng.gamma(params.alpha);
    const double g2 = rng.gamma(params.beta);
    const double x = g1 / (g1 + g2);
    if (x > 0.0 && x < 1.0) return x;
  }
}

Sample beta_sample(const BetaParams& params, std::size_t n, RngStream& rng) {
  params.validated();
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample size must be >= 1");
  }
  std::vector<double> values(n);
  for (auto& v : values) v = beta_draw(params, rng);
  return Sample::unit(std::move(values));
}

}  // namespace closedfit
