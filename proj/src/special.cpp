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

#include <cmath>
#include <string>

#include "closedfit/error.hpp"

namespace closedfit {
namespace {

constexpr double kHalfLogTwoPi = 0.91893853320467274178;

void require_positive(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::kDomain, std::string(fn) +
                                        ": argument must be positive and "
                                        "finite, got " +
                                        std::to_string(x));
  }
}

// Stirling series for ln Gamma, accurate to ~1e-16 for y >= 10.
double log_gamma_stirling(double y) {
  const double z = 1.0 / (y * y);
  // Bernoulli terms B_2k / (2k (2k-1)), Horner in 1/y^2.
  const double series =
      (1.0 / 12.0 +
       z * (-1.0 / 360.0 +
            z * (1.0 / 1260.0 +
                 z * (-1.0 / 1680.0 +
                      z * (1.0 / 1188.0 +
                           z * (-691.0 / 360360.0 + z * (1.0 / 156.0))))))) /
      y;
  return (y - 0.5) * std::log(y) - y + kHalfLogTwoPi + series;
}

double digamma_asymptotic(double y) {
  const double z = 1.0 / (y * y);
  const double series =
      z * (1.0 / 12.0 +
           z * (-1.0 / 120.0 +
                z * (1.0 / 252.0 +
                     z * (-1.0 / 240.0 +
                          z * (1.0 / 132.0 +
                               z * (-691.0 / 32760.0 +
                                    z * (1.0 / 12.0 +
                                         z * (-3617.0 / 8160.0))))))));
  return std::log(y) - 0.5 / y - series;
}

double trigamma_asymptotic(double y) {
  const double z = 1.0 / (y * y);
  const double series =
      1.0 / 6.0 +
      z * (-1.0 / 30.0 +
           z * (1.0 / 42.0 +
                z * (-1.0 / 30.0 +
                     z * (5.0 / 66.0 +
                          z * (-691.0 / 2730.0 + z * (7.0 / 6.0))))));
  return 1.0 / y + 0.5 * z + series * z / y;
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x >= 10.0) return log_gamma_stirling(x);
  // Gamma(x) = Gamma(x + k) / (x (x+1) ... (x+k-1))
  double product = 1.0;
  double y = x;
  while (y < 10.0) {
    product *= y;
    y += 1.0;
  }
  return log_gamma_stirling(y) - std::log(product);
}

double digamma(double x) {
  require_positive(x, "digamma");
  double shift = 0.0;
  double y = x;
  while (y < 10.0) {
    shift += 1.0 / y;
    y += 1.0;
  }
  return digamma_asymptotic(y) - shift;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  double shift = 0.0;
  double y = x;
  while (y < 10.0) {
    shift += 1.0 / (y * y);
    y += 1.0;
  }
  return trigamma_asymptotic(y) + shift;
}

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

}  // namespace closedfit
