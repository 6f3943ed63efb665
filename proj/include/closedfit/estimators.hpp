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

#ifndef CLOSEDFIT_ESTIMATORS_HPP_
#define CLOSEDFIT_ESTIMATORS_HPP_

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "closedfit/model.hpp"

namespace closedfit {

enum class BetaMethod { kMl, kChenXiao, kTamae, kProposed };

/// Canonical CLI keys: "ml", "chen-xiao", "tamae", "proposed".
std::string_view to_string(BetaMethod method) noexcept;
/// Table labels: "ML", "Chen–Xiao", "Tamae et al.", "Proposed".
std::string_view display_name(BetaMethod method) noexcept;
std::optional<BetaMethod> parse_beta_method(std::string_view key) noexcept;

inline constexpr BetaMethod kAllBetaMethods[] = {
    BetaMethod::kMl, BetaMethod::kChenXiao, BetaMethod::kTamae,
    BetaMethod::kProposed};

// Ascending candidate values for r and s.
class Grid {
 public:
  /// Throws Error(kInvalidArgument) unless both axes are nonempty, strictly
  /// ascending and positive.
  Grid(std::vector<double> r_values, std::vector<double> s_values);

  /// min, min + step, ..., up to max (inclusive within 1e-9 of a step).
  /// Values are snapped to 12 decimals so 0.1-step grids hit 0.3, 1.2, ...
  static std::vector<double> axis(double min, double max, double step);
  static Grid uniform(double rmin, double rmax, double rstep, double smin,
                      double smax, double sstep);
  /// {0.1, 0.2, ..., 2.5} on both axes.
  static Grid default_grid();

  const std::vector<double>& r_values() const noexcept { return r_; }
  const std::vector<double>& s_values() const noexcept { return s_; }
  std::size_t size() const noexcept { return r_.size() * s_.size(); }

 private:
  std::vector<double> r_;
  std::vector<double> s_;
};

// ---------------------------------------------------------------------------
// Maximum likelihood.

struct MlOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;  // infinity norm of the score residual
};

/// Solves psi(a) - psi(a+b) = mean log X, psi(b) - psi(a+b) = mean log(1-X)
/// by damped Newton from the method-of-moments start. Throws
/// ConvergenceError (with the last iterate) after the iteration cap and
/// Error(kDegenerate) for constant samples.
FitResult fit_ml(const Sample& sample, const MlOptions& options = {});

/// The two score residuals at `params`.
std::array<double, 2> ml_score_residuals(const Sample& sample,
                                         const BetaParams& params);

// ---------------------------------------------------------------------------
// Closed forms obtained from pairs of transformed likelihood equations.

/// Means behind the identity/one-minus transform pair:
///   a = mean log X,                 b = mean X/(1-X) log X,
///   c = mean (1-X)/X log(1-X),      d = mean log(1-X).
/// The estimating equations are
///   alpha a - beta b = -1 - b,   -alpha c + beta d = -1 - c.
struct ChenXiaoStatistics {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

ChenXiaoStatistics chen_xiao_statistics(const Sample& sample);
FitResult fit_chen_xiao(const Sample& sample);

/// alpha = mean X / den, beta = (1 - mean X) / den with
/// den = mean(X logit X) - mean(X) mean(logit X).
FitResult fit_tamae(const Sample& sample);

// ---------------------------------------------------------------------------
// The (r, s) family and its profile-likelihood selector.

/// Which kernel the E statistic uses.
///  - kPublished: [r - (1-x^r) - rs x^r] (1-x^r)^s / x^(2s-r) log(1-x^r),
///    the form behind the reference application and simulation tables.
///  - kDerived: [r - (1-x^r) - rs x^r] / x^r log(1-x^r), the form implied
///    by g''/g' of g(x) = (1 - x^(1/s))^(1/r); it is Fisher-consistent for
///    every (r, s), the published form only when r = s = 1.
enum class RsVariant { kPublished, kDerived };

/// Means A..F of the (r, s) family. A and B are the identity-transform
/// statistics (mean log X and mean X/(1-X) log X); C..F come from
/// g(x) = (1 - x^(1/s))^(1/r).
struct RSStatistics {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
  double f = 0.0;
};

/// Throws Error(kInvalidArgument) for r, s <= 0 and Error(kNonFinite) when
/// a statistic overflows.
RSStatistics rs_statistics(const Sample& sample, RSPair rs,
                           RsVariant variant = RsVariant::kPublished);

/// beta = [-r - E - C + D - rsF - (B+1)C/A] / (D - BC/A),
/// alpha = ((beta - 1) B - 1) / A.
FitResult fit_rs(const Sample& sample, RSPair rs,
                 RsVariant variant = RsVariant::kPublished);

/// Evaluates fit_rs over the grid and keeps the candidate with the largest
/// beta log-likelihood; ties within 1e-12 go to the smaller r, then the
/// smaller s. Rejected grid points are listed in FitResult::skipped_rs.
/// Throws Error(kEstimationFailed) if no grid point is admissible.
FitResult fit_profile(const Sample& sample, const Grid& grid,
                      RsVariant variant = RsVariant::kPublished);

/// Dispatch on method; `grid` is used by kProposed only.
FitResult fit_beta(const Sample& sample, BetaMethod method,
                   const Grid& grid = Grid::default_grid());

}  // namespace closedfit

#endif  // CLOSEDFIT_ESTIMATORS_HPP_
