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

#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/distributions/beta.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "closedfit/error.hpp"
#include "oracles.hpp"

namespace closedfit {
namespace {

using testing::integrate_unit;
using testing::roraima_values;

TEST(BetaLogpdf, Examples) {
  EXPECT_NEAR(beta_logpdf(0.3, {1, 1}), 0.0, 1e-13);
  EXPECT_NEAR(beta_logpdf(0.5, {2, 1}), 0.0, 1e-13);
  EXPECT_NEAR(beta_logpdf(0.5, {2, 2}), 0.4054651081081644, 1e-12);
}

TEST(BetaLogpdf, RejectsOutsideOpenInterval) {
  for (double x : {0.0, 1.0, -0.1, 1.5}) {
    try {
      beta_logpdf(x, {2, 2});
      ADD_FAILURE() << x;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDomain);
    }
  }
  EXPECT_THROW(beta_logpdf(0.5, {-1, 2}), Error);
}

TEST(BetaLoglik, Examples) {
  EXPECT_NEAR(beta_loglik(Sample::unit({0.2, 0.8}), {1, 1}), 0.0, 1e-13);
  EXPECT_NEAR(beta_loglik(Sample::unit({0.5}), {2, 2}), 0.4054651081, 1e-10);
  const double v = beta_loglik(Sample::unit(roraima_values()), {1.29, 14.7});
  EXPECT_NEAR(-2.0 * v + 4.0, -42.5, 0.1);
}

TEST(BetaLoglik, PermutationInvariant) {
  auto v = roraima_values();
  const double base = beta_loglik(Sample::unit(v), {1.3, 14.0});
  std::mt19937 shuffle_rng(7);
  for (int k = 0; k < 10; ++k) {
    std::shuffle(v.begin(), v.end(), shuffle_rng);
    EXPECT_NEAR(beta_loglik(Sample::unit(v), {1.3, 14.0}), base, 1e-12);
  }
}

TEST(BetaSufficientStats, MatchesDirectSum) {
  const auto s = Sample::unit(roraima_values());
  const auto stats = BetaSufficientStats::from(s);
  for (BetaParams p : {BetaParams{0.5, 3}, BetaParams{1.2, 14}, BetaParams{4, 4}}) {
    EXPECT_NEAR(stats.loglik(p), beta_loglik(s, p), 1e-10);
  }
}

TEST(InformationCriteria, Examples) {
  EXPECT_NEAR(information_criteria(23.25, 2, 15).aic, -42.5, 1e-12);
  const auto ic1 = information_criteria(0.0, 2, 1);
  EXPECT_DOUBLE_EQ(ic1.aic, 4.0);
  EXPECT_DOUBLE_EQ(ic1.bic, 0.0);  // ln 1 = 0
  const auto ic7 = information_criteria(10.0, 2, 7);
  EXPECT_NEAR(ic7.bic, -20.0 + 2.0 * std::log(7.0), 1e-12);
  EXPECT_THROW(information_criteria(0.0, 0, 5), Error);
}

TEST(FitResult, CriteriaFollowLoglik) {
  const auto s = Sample::unit(roraima_values());
  const auto fit = make_beta_fit("x", {1.3, 14.0}, s);
  EXPECT_DOUBLE_EQ(fit.aic, -2.0 * fit.loglik + 4.0);
  EXPECT_DOUBLE_EQ(fit.bic, -2.0 * fit.loglik + 2.0 * std::log(15.0));
}

TEST(Sample, Validation) {
  try {
    Sample::unit({});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    EXPECT_STREQ(e.what(), "no observations");
  }
  try {
    Sample::unit({0.2, 1.0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
    EXPECT_NE(std::string(e.what()).find("observation 2"), std::string::npos);
  }
  EXPECT_THROW(Sample::positive({1.0, -2.0}), Error);
  EXPECT_NO_THROW(Sample::positive({1.0, 2.0, 300.0}));
}

class Normalization : public ::testing::TestWithParam<std::pair<double, double>> {};

TEST_P(Normalization, DensityIntegratesToOne) {
  const auto [a, b] = GetParam();
  const double total = integrate_unit(
      [&](double x) {
        if (!(x > 0.0 && x < 1.0)) return 0.0;
        return std::exp(beta_logpdf(x, {a, b}));
      },
      1e-8);
  EXPECT_NEAR(total, 1.0, 1e-6);
}

std::vector<std::pair<double, double>> shape_grid() {
  std::vector<std::pair<double, double>> g;
  for (double a : {0.5, 1.0, 2.0}) {
    for (double b : {0.5, 1.0, 2.0}) g.emplace_back(a, b);
  }
  return g;
}

INSTANTIATE_TEST_SUITE_P(Shapes, Normalization, ::testing::ValuesIn(shape_grid()));

TEST(BetaSample, MomentsAndDeterminism) {
  RngStream rng(42);
  const auto s22 = beta_sample({2, 2}, 100000, rng);
  double mean = 0.0;
  for (double x : s22.values()) mean += x;
  mean /= 1e5;
  EXPECT_NEAR(mean, 0.5, 0.005);

  RngStream rng2(43);
  const auto s11 = beta_sample({1, 1}, 100000, rng2);
  double m = 0.0, v = 0.0;
  for (double x : s11.values()) m += x;
  m /= 1e5;
  for (double x : s11.values()) v += (x - m) * (x - m);
  v /= 1e5 - 1.0;
  EXPECT_NEAR(v, 1.0 / 12.0, 0.002);

  RngStream a(9), b(9);
  const auto sa = beta_sample({0.5, 2}, 1000, a);
  const auto sb = beta_sample({0.5, 2}, 1000, b);
  EXPECT_TRUE(std::equal(sa.values().begin(), sa.values().end(),
                         sb.values().begin()));
}

class SamplerLaw : public ::testing::TestWithParam<std::pair<double, double>> {};

TEST_P(SamplerLaw, KolmogorovSmirnovBelowCriticalValue) {
  const auto [a, b] = GetParam();
  const std::size_t n = 100000;
  RngStream rng(derive_seed(2024, static_cast<std::uint64_t>(a * 10 + b)));
  const auto s = beta_sample({a, b}, n, rng);
  std::vector<double> v(s.values().begin(), s.values().end());
  std::sort(v.begin(), v.end());
  const boost::math::beta_distribution<double> law(a, b);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = boost::math::cdf(law, v[i]);
    d = std::max({d, f - static_cast<double>(i) / n,
                  static_cast<double>(i + 1) / n - f});
  }
  // Asymptotic Kolmogorov quantile at the 1% level.
  const double critical =
      std::sqrt(-0.5 * std::log(0.01 / 2.0)) / std::sqrt(static_cast<double>(n));
  EXPECT_LT(d, critical);
}

INSTANTIATE_TEST_SUITE_P(Shapes, SamplerLaw, ::testing::ValuesIn(shape_grid()));

TEST(BetaSample, ValuesStayInsideOpenInterval) {
  RngStream rng(5);
  const auto s = beta_sample({0.05, 0.05}, 20000, rng);
  for (double x : s.values()) {
    ASSERT_GT(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
}

}  // namespace
}  // namespace closedfit
