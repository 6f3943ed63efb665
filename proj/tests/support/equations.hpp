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

#ifndef CLOSEDFIT_TESTS_EQUATIONS_HPP_
#define CLOSEDFIT_TESTS_EQUATIONS_HPP_

#include <array>
#include <string_view>
#include <vector>

#include "closedfit/estimators.hpp"
#include "closedfit/model.hpp"
#include "closedfit/weighted.hpp"

namespace closedfit::testing {

// Independent per-equation sums used by the beta oracles.
struct Sums {
  double log_x = 0, log1m_x = 0, odds_log_x = 0, inv_odds_log1m_x = 0;
  double one_minus_logit = 0, x_logit = 0, mean_x = 0;
};

Sums sums(const std::vector<double>& v);

// The six (r, s) means by literal term-by-term evaluation.
RSStatistics direct_rs(const std::vector<double>& v, double r, double s);

// Pair of estimating equations as a linear system in (alpha, beta).
struct LinearSystem {
  std::array<double, 4> m;
  std::array<double, 2> rhs;
};

//   alpha A - beta B = -1 - B
//   -alpha C + beta D = -r - E - C + D - rs F
LinearSystem rs_system(const RSStatistics& st, double r, double s);
LinearSystem chen_xiao_system(const Sums& s);
LinearSystem tamae_system(const Sums& s);

double max_relative_residual(const LinearSystem& sys, const BetaParams& p);

// Weighted-family means written out per built-in generator, without the
// Generator callbacks.
WeightedStatistics direct_weighted_statistics(const std::vector<double>& v,
                                              std::string_view generator,
                                              bool kronecker);

// Residuals of the two weighted estimating equations, scaled by their terms.
std::array<double, 2> weighted_equation_residuals(const WeightedStatistics& st,
                                                  const WeightedParams& p);

}  // namespace closedfit::testing

#endif  // CLOSEDFIT_TESTS_EQUATIONS_HPP_
