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

#include "closedfit/weighted.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "closedfit/error.hpp"
#include "closedfit/special.hpp"

namespace closedfit {
namespace {

bool vanishes(double denominator, double numerator) {
  return !(std::abs(denominator) >=
           1e-12 * std::max(1.0, std::abs(numerator)));
}

double bracket(const Generator& gen, double x, bool kronecker) {
  const double s = gen.s(x);
  const double sp = gen.s_prime(x);
  const double delta = kronecker ? 1.0 : 0.0;
  return gen.s_second(x) / sp - sp / (s * (1.0 + delta * s));
}

void require_finite(const WeightedStatistics& st) {
  if (!(std::isfinite(st.a) && std::isfinite(st.b) && std::isfinite(st.c) &&
        std::isfinite(st.d) && std::isfinite(st.e) && std::isfinite(st.f))) {
    throw Error(ErrorCode::kNonFinite,
                "weighted statistics are not finite for this sample");
  }
}

WeightedStatistics scaled(WeightedStatistics st, double n) {
  st.a /= n;
  st.b /= n;
  st.c /= n;
  st.d /= n;
  st.e /= n;
  st.f /= n;
  return st;
}

FitResult make_weighted_fit(std::string method, const WeightedParams& params,
                            const Sample& sample, const Generator& gen) {
  FitResult fit;
  fit.method = std::move(method);
  fit.params = params;
  fit.loglik = weighted_loglik(sample, params, gen);
  const auto ic = information_criteria(fit.loglik, 2, sample.size());
  fit.aic = ic.aic;
  fit.bic = ic.bic;
  return fit;
}

void require_params(const WeightedParams& p) {
  if (!(p.mu > 0.0 && p.sigma > 0.0 && std::isfinite(p.mu) &&
        std::isfinite(p.sigma))) {
    throw Error(ErrorCode::kInvalidArgument,
                "mu and sigma must be positive and finite");
  }
}

}  // namespace

Generator builtin_generator(std::string_view name) {
  Generator g;
  g.label = std::string(name);
  if (name == "gamma" || name == "weighted-lindley") {
    g.s = [](double x) { return x; };
    g.s_prime = [](double) { return 1.0; };
    g.s_second = [](double) { return 0.0; };
    g.default_kronecker = name == "weighted-lindley";
    return g;
  }
  if (name == "nakagami") {
    g.s = [](double x) { return x * x; };
    g.s_prime = [](double x) { return 2.0 * x; };
    g.s_second = [](double) { return 2.0; };
    return g;
  }
  if (name == "inverse") {
    g.s = [](double x) { return 1.0 / x; };
    g.s_prime = [](double x) { return -1.0 / (x * x); };
    g.s_second = [](double x) { return 2.0 / (x * x * x); };
    return g;
  }
  std::string known;
  for (auto k : kBuiltinGenerators) {
    if (!known.empty()) known += ", ";
    known += k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown generator '" +
                                               std::string(name) +
                                               "'; built-ins: " + known);
}

WeightedStatistics weighted_statistics(const Sample& sample,
                                       const Generator& gen, bool kronecker) {
  WeightedStatistics st;
  for (double x : sample.values()) {
    const double s = gen.s(x);
    const double sp = gen.s_prime(x);
    const double w = x * std::log(x);
    st.a += s;
    st.b += sp / s * w;
    st.c += sp * w;
    st.d += std::log(x);
    st.e += bracket(gen, x, kronecker) * w;
  }
  st = scaled(st, static_cast<double>(sample.size()));
  require_finite(st);
  return st;
}

WeightedStatistics weighted_exp_statistics(const Sample& sample,
                                           const Generator& gen,
                                           bool kronecker, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::kInvalidArgument, "r must be positive");
  }
  WeightedStatistics st;
  for (double x : sample.values()) {
    const double s = gen.s(x);
    const double sp = gen.s_prime(x);
    const double l1 = std::log1p(x);
    const double ll = std::log(l1 / r);
    const double w = (x + 1.0) * l1 * ll;
    st.a += s;
    st.b += sp / s * w;
    st.c += sp * w;
    st.d += l1 * ll;
    st.e += bracket(gen, x, kronecker) * w;
    st.f += ll;
  }
  st = scaled(st, static_cast<double>(sample.size()));
  require_finite(st);
  return st;
}

WeightedParams solve_weighted(const WeightedStatistics& st, bool kronecker) {
  const double k = 1.0 + st.d + st.e + st.f;
  if (vanishes(st.a, 1.0)) {
    throw Error(ErrorCode::kDegenerate, "weighted: mean of S vanishes");
  }
  double mu = 0.0;
  double sigma = 0.0;
  if (!kronecker) {
    sigma = 1.0 / st.a;
    const double num = st.a * k;
    const double den = st.c - st.a * st.b;
    if (vanishes(den, num)) {
      throw Error(ErrorCode::kDegenerate, "weighted: C - AB vanishes");
    }
    mu = num / den;
  } else {
    if (vanishes(k, std::max(std::abs(st.b), std::abs(st.c)))) {
      throw Error(ErrorCode::kDegenerate, "weighted: 1 + D + E vanishes");
    }
    const double lin = 1.0 - st.a + st.c / k;
    const double disc = lin * lin - 4.0 * st.a * (st.b / k - 1.0);
    if (disc < 0.0) {
      throw Error(ErrorCode::kEstimationFailed,
                  "weighted: negative discriminant in the sigma quadratic");
    }
    sigma = (lin + std::sqrt(disc)) / (2.0 * st.a);
    const double den = 1.0 - sigma * st.a;
    const double num = sigma / (sigma + 1.0) - 1.0;
    if (vanishes(den, num)) {
      throw Error(ErrorCode::kDegenerate, "weighted: 1 - sigma A vanishes");
    }
    mu = num / den;
  }
  if (!(mu > 0.0 && sigma > 0.0 && std::isfinite(mu) &&
        std::isfinite(sigma))) {
    throw OutOfDomainError("weighted: estimate (" + std::to_string(mu) + ", " +
                               std::to_string(sigma) +
                               ") is outside the parameter space",
                           {mu, sigma});
  }
  return {mu, sigma, kronecker};
}

FitResult fit_weighted(const Sample& sample, const Generator& gen,
                       bool kronecker) {
  const auto params =
      solve_weighted(weighted_statistics(sample, gen, kronecker), kronecker);
  return make_weighted_fit("weighted/" + gen.label, params, sample, gen);
}

FitResult fit_weighted_exp_variant(const Sample& sample, const Generator& gen,
                                   bool kronecker, double r) {
  const auto params = solve_weighted(
      weighted_exp_statistics(sample, gen, kronecker, r), kronecker);
  return make_weighted_fit("weighted-exp/" + gen.label, params, sample, gen);
}

double weighted_logpdf(double x, const WeightedParams& params,
                       const Generator& gen) {
  require_params(params);
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::kDomain,
                "weighted density needs x > 0, got " + std::to_string(x));
  }
  const double mu = params.mu;
  const double sigma = params.sigma;
  const double delta = params.kronecker ? 1.0 : 0.0;
  const double s = gen.s(x);
  return (mu + 1.0) * std::log(mu * sigma) - std::log(sigma + delta) -
         log_gamma(mu + 1.0) + std::log1p(delta * s) +
         std::log(std::abs(gen.s_prime(x))) - std::log(s) - mu * sigma * s +
         mu * std::log(s);
}

double weighted_loglik(const Sample& sample, const WeightedParams& params,
                       const Generator& gen) {
  double total = 0.0;
  for (double x : sample.values()) total += weighted_logpdf(x, params, gen);
  return total;
}

Sample gamma_sample(double shape, double rate, std::size_t n, RngStream& rng) {
  if (!(rate > 0.0) || !std::isfinite(rate) || n == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "gamma sampler needs rate > 0 and n >= 1");
  }
  std::vector<double> v(n);
  for (auto& x : v) {
    do {
      x = rng.gamma(shape) / rate;
    } while (!(x > 0.0));
  }
  return Sample::positive(std::move(v));
}

Sample nakagami_sample(double m, double omega, std::size_t n, RngStream& rng) {
  if (!(m > 0.0) || !(omega > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "nakagami sampler needs m > 0 and omega > 0");
  }
  Sample g = gamma_sample(m, m / omega, n, rng);
  std::vector<double> v(g.values().begin(), g.values().end());
  for (auto& x : v) x = std::sqrt(x);
  return Sample::positive(std::move(v));
}

Sample weighted_lindley_sample(const WeightedParams& params, std::size_t n,
                               RngStream& rng) {
  require_params(params);
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample size must be >= 1");
  }
  const double rate = params.mu * params.sigma;
  const double p_first = params.sigma / (params.sigma + 1.0);
  std::vector<double> v(n);
  for (auto& x : v) {
    const double shape = rng.uniform() < p_first ? params.mu : params.mu + 1.0;
    do {
      x = rng.gamma(shape) / rate;
    } while (!(x > 0.0));
  }
  return Sample::positive(std::move(v));
}

}  // namespace closedfit
