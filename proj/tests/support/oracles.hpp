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

#ifndef CLOSEDFIT_TESTS_ORACLES_HPP_
#define CLOSEDFIT_TESTS_ORACLES_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "closedfit/asymptotics.hpp"
#include "closedfit/model.hpp"
#include "closedfit/rng.hpp"

namespace closedfit::testing {

/// The bundled 15 farming proportions, read from the data directory.
std::vector<double> roraima_values();
std::string data_path(const std::string& name);

/// Integral over (0, 1) by tanh-sinh quadrature (handles integrable
/// endpoint singularities).
double integrate_unit(const std::function<double(double)>& f,
                      double tolerance = 1e-12);

/// Beta density from Boost.Math, independent of the library's own.
double beta_pdf_oracle(double x, double alpha, double beta);

/// Solves [[m00, m01], [m10, m11]] x = rhs with a pivoted LU.
std::array<double, 2> solve_linear(const std::array<double, 4>& m,
                                   const std::array<double, 2>& rhs);

/// |lhs - rhs| scaled by the magnitude of the terms involved.
double relative_residual(double lhs, double rhs, double scale);

/// n draws from a randomly chosen Beta(a, b) with a, b in [0.3, 5].
std::vector<double> random_unit_values(RngStream& rng, std::size_t n);

/// E[theta(X)] for X ~ Beta(alpha, beta) by quadrature.
ThetaVector population_moments(const MomentModel& model, double alpha,
                               double beta);

}  // namespace closedfit::testing

#endif  // CLOSEDFIT_TESTS_ORACLES_HPP_
