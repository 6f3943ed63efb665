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

#include "closedfit/special.hpp"

#include <gtest/gtest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "closedfit/error.hpp"

namespace closedfit {
namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) {
    g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  }
  return g;
}

TEST(LogGamma, KnownValues) {
  EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-13);
  EXPECT_NEAR(log_gamma(2.0), 0.0, 1e-13);
  EXPECT_NEAR(log_gamma(0.5), 0.57236494292470008, 1e-13);
}

// Absolute 1e-12 is out of reach once |ln Gamma| is ~1e7, so the bound is
// 1e-12 absolute or relative, whichever is larger.
TEST(LogGamma, MatchesBoostOverRange) {
  for (double x : log_grid(1e-3, 1e6, 400)) {
    const double ref = boost::math::lgamma(x);
    EXPECT_LE(std::abs(log_gamma(x) - ref), 1e-12 * std::max(1.0, std::abs(ref)))
        << "x = " << x;
  }
}

TEST(Digamma, KnownValues) {
  EXPECT_NEAR(digamma(1.0), -0.5772156649015329, 1e-15);
  EXPECT_NEAR(digamma(2.0), 0.4227843350984671, 1e-15);
  EXPECT_NEAR(digamma(0.5), -1.9635100260214235, 1e-14);
}

TEST(Digamma, MatchesBoostOverRange) {
  for (double x : log_grid(1e-3, 1e6, 400)) {
    EXPECT_NEAR(digamma(x), boost::math::digamma(x), 1e-10) << "x = " << x;
  }
}

TEST(Trigamma, KnownValues) {
  EXPECT_NEAR(trigamma(1.0), 1.6449340668482264, 1e-14);
  EXPECT_NEAR(trigamma(0.5), 4.934802200544679, 1e-13);
  EXPECT_NEAR(trigamma(2.0), 0.6449340668482264, 1e-14);
}

TEST(Trigamma, MatchesBoostRelative) {
  for (double x : log_grid(1e-3, 1e6, 400)) {
    const double ref = boost::math::trigamma(x);
    EXPECT_LE(std::abs(trigamma(x) - ref), 1e-8 * ref) << "x = " << x;
  }
}

TEST(Digamma, Recurrence) {
  for (double x = 0.01; x <= 100.0; x *= 1.07) {
    EXPECT_NEAR(digamma(x + 1.0) - digamma(x) - 1.0 / x, 0.0, 1e-9);
  }
}

TEST(Digamma, StrictlyIncreasing) {
  double prev = digamma(1e-3);
  for (double x : log_grid(1e-3, 1e6, 2000)) {
    if (x == 1e-3) continue;
    const double v = digamma(x);
    EXPECT_GT(v, prev) << "x = " << x;
    prev = v;
  }
}

TEST(Special, FiniteDifferenceConsistency) {
  for (double x = 0.1; x <= 50.0; x += 0.37) {
    const double h = 1e-5 * std::max(1.0, x);
    const double d_lg = (log_gamma(x + h) - log_gamma(x - h)) / (2.0 * h);
    EXPECT_NEAR(d_lg, digamma(x), 1e-6) << "x = " << x;
    const double d_dg = (digamma(x + h) - digamma(x - h)) / (2.0 * h);
    EXPECT_NEAR(d_dg, trigamma(x), 1e-5) << "x = " << x;
  }
}

TEST(Special, RejectsNonPositiveAndNonFinite) {
  const double bad[] = {0.0, -1.0, -0.5, std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::quiet_NaN()};
  for (double x : bad) {
    for (auto fn : {&log_gamma, &digamma, &trigamma}) {
      try {
        fn(x);
        ADD_FAILURE() << "no error for x = " << x;
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kDomain);
      }
    }
  }
}

TEST(LogBeta, Identity) {
  EXPECT_NEAR(log_beta(2.0, 2.0), std::log(1.0 / 6.0), 1e-14);
  EXPECT_NEAR(log_beta(1.0, 1.0), 0.0, 1e-13);
}

}  // namespace
}  // namespace closedfit
