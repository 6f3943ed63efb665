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

#ifndef CLOSEDFIT_WEIGHTED_HPP_
#define CLOSEDFIT_WEIGHTED_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "closedfit/model.hpp"
#include "closedfit/rng.hpp"

namespace closedfit {

// Generator S of the weighted exponential family
//   f(x) = (mu sigma)^(mu+1) / ((sigma + d) Gamma(mu+1))
//          [1 + d S(x)] |S'(x)| / S(x) exp(-mu sigma S(x) + mu log S(x)),
// with d the Kronecker indicator of the a = b branch.
struct Generator {
  using Fn = std::function<double(double)>;

  std::string label;
  Fn s;
  Fn s_prime;
  Fn s_second;
  /// Branch the named distribution belongs to (true for weighted-lindley).
  bool default_kronecker = false;
};

/// "gamma" (x), "nakagami" (x^2), "weighted-lindley" (x, a = b) or
/// "inverse" (1/x). Throws Error(kInvalidArgument) listing the built-ins.
Generator builtin_generator(std::string_view name);

inline constexpr std::string_view kBuiltinGenerators[] = {
    "gamma", "nakagami", "weighted-lindley", "inverse"};

/// Means A..E (and F for the exp(rx) - 1 transform). In the basic form the
/// weight is w(x) = x log x; in the exp variant it is
/// (x+1) log(x+1) log(log(x+1)/r):
///   A = mean S,  B = mean S'/S w,  C = mean S' w,
///   D = mean log x                     (basic)
///     = mean log(x+1) log(log(x+1)/r)  (exp variant),
///   E = mean {S''/S' - S'/(S (1 + d S))} w,
///   F = mean log(log(x+1)/r)           (exp variant; 0 otherwise).
struct WeightedStatistics {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
  double f = 0.0;
};

/// Throws Error(kNonFinite) when a term overflows or S' vanishes.
WeightedStatistics weighted_statistics(const Sample& sample,
                                       const Generator& gen, bool kronecker);
WeightedStatistics weighted_exp_statistics(const Sample& sample,
                                           const Generator& gen,
                                           bool kronecker, double r);

/// Closed-form (mu, sigma) from the statistics with K = 1 + D + E + F.
///   a != b: sigma = 1/A, mu = A K / (C - A B).
///   a == b: sigma is the "+" root of
///           A s^2 + (A - 1 - C/K) s + (B/K - 1) = 0,
///           mu = (sigma/(sigma+1) - 1) / (1 - sigma A).
/// Throws Error(kDegenerate) for vanishing denominators,
/// Error(kEstimationFailed) for a negative discriminant and
/// OutOfDomainError for nonpositive estimates.
WeightedParams solve_weighted(const WeightedStatistics& st, bool kronecker);

FitResult fit_weighted(const Sample& sample, const Generator& gen,
                       bool kronecker);
FitResult fit_weighted_exp_variant(const Sample& sample, const Generator& gen,
                                   bool kronecker, double r);

double weighted_logpdf(double x, const WeightedParams& params,
                       const Generator& gen);
double weighted_loglik(const Sample& sample, const WeightedParams& params,
                       const Generator& gen);

/// Gamma(shape, rate) draws.
Sample gamma_sample(double shape, double rate, std::size_t n, RngStream& rng);
/// Nakagami(m, omega) draws as sqrt(Gamma(m, scale omega/m)).
Sample nakagami_sample(double m, double omega, std::size_t n, RngStream& rng);
/// Weighted-Lindley draws from the a = b density with S(x) = x: a
/// Gamma(mu, mu sigma) / Gamma(mu + 1, mu sigma) mixture with weights
/// sigma/(sigma+1) and 1/(sigma+1).
Sample weighted_lindley_sample(const WeightedParams& params, std::size_t n,
                               RngStream& rng);

}  // namespace closedfit

#endif  // CLOSEDFIT_WEIGHTED_HPP_
