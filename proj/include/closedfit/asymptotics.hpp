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

#ifndef CLOSEDFIT_ASYMPTOTICS_HPP_
#define CLOSEDFIT_ASYMPTOTICS_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "closedfit/model.hpp"

namespace closedfit {

// A monotone map g from part of the positive half-line onto (0, 1), described
// through its behaviour at g^{-1}(x). The three trailing members are the
// products that actually enter the theta functionals; built-in transforms
// give them in closed form so that nothing overflows when g^{-1}(x) is huge
// or tiny.
struct Transform {
  using Fn = std::function<double(double)>;

  Fn forward;                // g(y)
  Fn inverse;                // g^{-1}(x)
  Fn derivative_at_inverse;  // g'(g^{-1}(x))
  Fn curvature_at_inverse;   // g''/g' at g^{-1}(x)
  Fn log_inverse;            // log g^{-1}(x)
  Fn scaled_derivative;      // g'(g^{-1}(x)) g^{-1}(x)
  Fn scaled_curvature;       // (g''/g')(g^{-1}(x)) g^{-1}(x)

  /// Fills the last three members from the first four.
  static Transform from_basic(Fn forward, Fn inverse, Fn derivative_at_inverse,
                              Fn curvature_at_inverse);
};

struct TransformPair {
  std::string label;
  Transform first;
  Transform second;
};

/// "chen-xiao" (x, 1 - x), "tamae" (y/(y+1), -log y/(1 - log y)), or
/// "rs(r,s)" (identity paired with (1 - y^(1/s))^(1/r)). Throws
/// Error(kInvalidArgument) for anything else.
TransformPair builtin_transform_pair(std::string_view name);
TransformPair rs_transform_pair(RSPair rs);

/// theta_{k,j}(x) stored as (k=1..5 for j=1, then k=1..5 for j=2).
using ThetaVector = std::array<double, 10>;

constexpr std::size_t theta_index(int k, int j) noexcept {
  return static_cast<std::size_t>((j - 1) * 5 + (k - 1));
}

/// Throws Error(kDomain) outside (0, 1) and Error(kNonFinite) on overflow.
ThetaVector theta_eval(double x, const TransformPair& pair);

// Per-observation map x -> ThetaVector. Usually built from a TransformPair.
class MomentModel {
 public:
  using ThetaFn = std::function<ThetaVector(double)>;

  MomentModel(std::string label, ThetaFn theta)
      : label_(std::move(label)), theta_(std::move(theta)) {}
  MomentModel(TransformPair pair);  // NOLINT(google-explicit-constructor)

  const std::string& label() const noexcept { return label_; }
  ThetaVector operator()(double x) const { return theta_(x); }

 private:
  std::string label_;
  ThetaFn theta_;
};

/// The rs pair with theta_{3,2} swapped for the published E kernel divided
/// by r; xi_maps over its moments reproduces fit_rs(..., kPublished).
MomentModel published_rs_moment_model(RSPair rs);

using Matrix10 = std::array<std::array<double, 10>, 10>;

struct MomentVector {
  ThetaVector mean{};
  Matrix10 covariance{};  // unbiased, divisor n - 1
  std::size_t n = 0;
};

/// Needs n >= 2.
MomentVector empirical_moments(const Sample& sample, const MomentModel& model);

/// (xi_1, xi_2) of a moment vector. The pair is not validated, so
/// perturbed moments may give nonpositive values. Throws Error(kDegenerate)
/// when x_{2,1} or the xi_1 denominator vanishes.
BetaParams xi_maps(const ThetaVector& moments);

/// 2x10 central-difference Jacobian of xi_maps with steps
/// step_scale * max(1e-6, 1e-6 |m_i|).
std::array<ThetaVector, 2> xi_jacobian(const ThetaVector& moments,
                                       double step_scale = 1.0);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct AsymptoticResult {
  BetaParams estimates;
  std::array<std::array<double, 2>, 2> covariance{};  // already divided by n
  std::array<double, 2> std_errors{};
  std::array<Interval, 2> wald_intervals{};
  double level = 0.95;
};

/// A Sigma A^T / n with A = xi_jacobian at the empirical moments. Needs
/// n >= 3 and 0 < level < 1.
AsymptoticResult delta_method(const Sample& sample, const MomentModel& model,
                              double level = 0.95);

/// Inverse-Fisher-information counterpart for maximum likelihood fits.
AsymptoticResult ml_asymptotics(const BetaParams& estimates, std::size_t n,
                                double level = 0.95);

/// Two-sided standard normal quantile for a confidence level.
double normal_critical_value(double level);

}  // namespace closedfit

#endif  // CLOSEDFIT_ASYMPTOTICS_HPP_
