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

#include "closedfit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "closedfit/error.hpp"
#include "closedfit/special.hpp"

namespace closedfit {
namespace {

// A denominator counts as zero when it is negligible next to its numerator.
bool vanishes(double denominator, double numerator) {
  return !(std::abs(denominator) >=
           1e-12 * std::max(1.0, std::abs(numerator)));
}

void require_unit(const Sample& sample, const char* who) {
  if (sample.support() != Support::kUnitInterval) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(who) + " needs a unit-interval sample");
  }
}

std::string pair_text(double a, double b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

BetaParams require_positive_estimate(double alpha, double beta,
                                     const char* who) {
  if (!(alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) &&
        std::isfinite(beta))) {
    throw OutOfDomainError(std::string(who) + ": estimate " +
                               pair_text(alpha, beta) +
                               " is outside the parameter space",
                           {alpha, beta});
  }
  return {alpha, beta};
}

// Per-sample quantities shared by every grid point.
struct BetaCache {
  std::span<const double> x;
  std::vector<double> log_x;
  std::vector<double> log1m_x;
  double a = 0.0;  // mean log x
  double b = 0.0;  // mean x / (1 - x) log x
  BetaSufficientStats sufficient;

  explicit BetaCache(const Sample& sample)
      : x(sample.values()),
        log_x(sample.size()),
        log1m_x(sample.size()) {
    const double n = static_cast<double>(sample.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      log_x[i] = std::log(x[i]);
      log1m_x[i] = std::log1p(-x[i]);
      a += log_x[i];
      b += x[i] / (1.0 - x[i]) * log_x[i];
      sufficient.sum_log_x += log_x[i];
      sufficient.sum_log1m_x += log1m_x[i];
    }
    sufficient.n = sample.size();
    a /= n;
    b /= n;
  }
};

// Everything that depends on r only.
struct PowerTerms {
  double r = 1.0;
  std::vector<double> xr;  // x^r
  std::vector<double> l;   // log(1 - x^r)
  double c = 0.0;
  double d = 0.0;
  double f = 0.0;
};

PowerTerms power_terms(const BetaCache& cache, double r) {
  const std::size_t n = cache.x.size();
  PowerTerms pt;
  pt.r = r;
  pt.xr.resize(n);
  pt.l.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = cache.x[i];
    const double xr = std::pow(x, r);
    const double l = std::log1p(-xr);
    pt.xr[i] = xr;
    pt.l[i] = l;
    pt.c += (1.0 - xr) / xr * l;
    // (1 - x^r) / ((1 - x) x^(r-1)) with x^(r-1) = x^r / x
    pt.d += (1.0 - xr) * x / ((1.0 - x) * xr) * l;
    pt.f += l;
  }
  const double nn = static_cast<double>(n);
  pt.c /= nn;
  pt.d /= nn;
  pt.f /= nn;
  return pt;
}

double e_statistic(const BetaCache& cache, const PowerTerms& pt, double s,
                   RsVariant variant) {
  const double r = pt.r;
  double sum = 0.0;
  for (std::size_t i = 0; i < pt.xr.size(); ++i) {
    const double xr = pt.xr[i];
    const double l = pt.l[i];
    const double bracket = r - (1.0 - xr) - r * s * xr;
    if (variant == RsVariant::kPublished) {
      // (1 - x^r)^s / x^(2s - r), combined in log space
      sum += bracket * std::exp(s * l + (r - 2.0 * s) * cache.log_x[i]) * l;
    } else {
      sum += bracket / xr * l;
    }
  }
  return sum / static_cast<double>(pt.xr.size());
}

RSStatistics assemble(const BetaCache& cache, const PowerTerms& pt, double s,
                      RsVariant variant) {
  RSStatistics st;
  st.a = cache.a;
  st.b = cache.b;
  st.c = pt.c;
  st.d = pt.d;
  st.e = e_statistic(cache, pt, s, variant);
  st.f = pt.f;
  return st;
}

bool all_finite(const RSStatistics& st) {
  return std::isfinite(st.a) && std::isfinite(st.b) && std::isfinite(st.c) &&
         std::isfinite(st.d) && std::isfinite(st.e) && std::isfinite(st.f);
}

struct RsSolution {
  BetaParams params;
  ErrorCode failure = ErrorCode::kInvalidArgument;
  bool ok = false;
  double raw_alpha = 0.0;
  double raw_beta = 0.0;
};

RsSolution solve_rs(const RSStatistics& st, RSPair rs) {
  RsSolution out;
  if (!all_finite(st)) {
    out.failure = ErrorCode::kNonFinite;
    return out;
  }
  const double num_b = -rs.r - st.e - st.c + st.d - rs.r * rs.s * st.f -
                       (st.b + 1.0) * st.c / st.a;
  const double den_b = st.d - st.b * st.c / st.a;
  if (vanishes(st.a, 1.0) || vanishes(den_b, num_b)) {
    out.failure = ErrorCode::kDegenerate;
    return out;
  }
  const double beta = num_b / den_b;
  const double alpha = ((beta - 1.0) * st.b - 1.0) / st.a;
  out.raw_alpha = alpha;
  out.raw_beta = beta;
  if (!(alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) &&
        std::isfinite(beta))) {
    out.failure = ErrorCode::kOutOfDomain;
    return out;
  }
  out.params = {alpha, beta};
  out.ok = true;
  return out;
}

void require_rs(RSPair rs) {
  if (!(rs.r > 0.0 && rs.s > 0.0 && std::isfinite(rs.r) &&
        std::isfinite(rs.s))) {
    throw Error(ErrorCode::kInvalidArgument,
                "r and s must be positive, got " + pair_text(rs.r, rs.s));
  }
}

double snap(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

std::string_view to_string(BetaMethod method) noexcept {
  switch (method) {
    case BetaMethod::kMl:
      return "ml";
    case BetaMethod::kChenXiao:
      return "chen-xiao";
    case BetaMethod::kTamae:
      return "tamae";
    case BetaMethod::kProposed:
      return "proposed";
  }
  return "?";
}

std::string_view display_name(BetaMethod method) noexcept {
  switch (method) {
    case BetaMethod::kMl:
      return "ML";
    case BetaMethod::kChenXiao:
      return "Chen–Xiao";
    case BetaMethod::kTamae:
      return "Tamae et al.";
    case BetaMethod::kProposed:
      return "Proposed";
  }
  return "?";
}

std::optional<BetaMethod> parse_beta_method(std::string_view key) noexcept {
  for (BetaMethod m : kAllBetaMethods) {
    if (key == to_string(m)) return m;
  }
  return std::nullopt;
}

// --- Grid -------------------------------------------------------------------

Grid::Grid(std::vector<double> r_values, std::vector<double> s_values)
    : r_(std::move(r_values)), s_(std::move(s_values)) {
  auto check = [](const std::vector<double>& axis, const char* name) {
    if (axis.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("grid axis ") + name + " is empty");
    }
    for (std::size_t i = 0; i < axis.size(); ++i) {
      if (!(axis[i] > 0.0) || !std::isfinite(axis[i]) ||
          (i > 0 && !(axis[i] > axis[i - 1]))) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string("grid axis ") + name +
                        " must be positive and strictly ascending");
      }
    }
  };
  check(r_, "r");
  check(s_, "s");
}

std::vector<double> Grid::axis(double min, double max, double step) {
  if (!(step > 0.0) || !(min > 0.0) || !(max >= min) || !std::isfinite(max)) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid range needs 0 < min <= max and step > 0");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    values[k] = snap(min + static_cast<double>(k) * step);
  }
  return values;
}

Grid Grid::uniform(double rmin, double rmax, double rstep, double smin,
                   double smax, double sstep) {
  return Grid(axis(rmin, rmax, rstep), axis(smin, smax, sstep));
}

Grid Grid::default_grid() {
  std::vector<double> axis(25);
  for (int k = 1; k <= 25; ++k) axis[k - 1] = k / 10.0;
  return Grid(axis, axis);
}

// --- ML ---------------------------------------------------------------------

std::array<double, 2> ml_score_residuals(const Sample& sample,
                                         const BetaParams& params) {
  const auto stats = BetaSufficientStats::from(sample);
  const double n = static_cast<double>(stats.n);
  const double psi_ab = digamma(params.alpha + params.beta);
  return {digamma(params.alpha) - psi_ab - stats.sum_log_x / n,
          digamma(params.beta) - psi_ab - stats.sum_log1m_x / n};
}

FitResult fit_ml(const Sample& sample, const MlOptions& options) {
  require_unit(sample, "fit_ml");
  const auto values = sample.values();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) {
    throw Error(ErrorCode::kDegenerate,
                "maximum likelihood needs a sample with at least two "
                "distinct values");
  }
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : values) var += (x - mean) * (x - mean);
  var /= (n - 1.0);

  const auto stats = BetaSufficientStats::from(sample);
  const double mean_log_x = stats.sum_log_x / n;
  const double mean_log1m_x = stats.sum_log1m_x / n;

  const double common = mean * (1.0 - mean) / var - 1.0;
  BetaParams p{std::max(1e-3, mean * common),
               std::max(1e-3, (1.0 - mean) * common)};

  auto residual = [&](const BetaParams& q) {
    const double psi_ab = digamma(q.alpha + q.beta);
    return std::array<double, 2>{digamma(q.alpha) - psi_ab - mean_log_x,
                                 digamma(q.beta) - psi_ab - mean_log1m_x};
  };
  auto norm = [](const std::array<double, 2>& v) {
    return std::max(std::abs(v[0]), std::abs(v[1]));
  };

  auto score = residual(p);
  double res = norm(score);
  int iterations = 0;
  for (; iterations < options.max_iterations; ++iterations) {
    if (res <= 1e-15) break;
    const double t_ab = trigamma(p.alpha + p.beta);
    const double j11 = trigamma(p.alpha) - t_ab;
    const double j22 = trigamma(p.beta) - t_ab;
    const double j12 = -t_ab;
    const double det = j11 * j22 - j12 * j12;
    const double da = -(j22 * score[0] - j12 * score[1]) / det;
    const double db = -(j11 * score[1] - j12 * score[0]) / det;

    // Step halving keeps iterates in the positive quadrant and the residual
    // decreasing.
    bool accepted = false;
    double lambda = 1.0;
    BetaParams candidate;
    std::array<double, 2> cand_score{};
    double cand_res = 0.0;
    for (int k = 0; k < 60; ++k, lambda *= 0.5) {
      candidate = {p.alpha + lambda * da, p.beta + lambda * db};
      if (!(candidate.alpha > 0.0 && candidate.beta > 0.0)) continue;
      cand_score = residual(candidate);
      cand_res = norm(cand_score);
      if (cand_res < res) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // at the floating-point noise floor
    p = candidate;
    score = cand_score;
    res = cand_res;
  }
  if (!(res <= options.tolerance)) {
    throw ConvergenceError(
        "maximum likelihood did not converge; last iterate " +
            pair_text(p.alpha, p.beta) + ", residual " + std::to_string(res),
        {p.alpha, p.beta}, iterations);
  }
  FitResult fit = make_beta_fit(std::string(to_string(BetaMethod::kMl)), p,
                                sample);
  fit.iterations = iterations;
  return fit;
}

// --- Closed forms -----------------------------------------------------------

ChenXiaoStatistics chen_xiao_statistics(const Sample& sample) {
  require_unit(sample, "chen_xiao_statistics");
  ChenXiaoStatistics st;
  for (double x : sample.values()) {
    const double lx = std::log(x);
    const double l1x = std::log1p(-x);
    st.a += lx;
    st.b += x / (1.0 - x) * lx;
    st.c += (1.0 - x) / x * l1x;
    st.d += l1x;
  }
  const double n = static_cast<double>(sample.size());
  st.a /= n;
  st.b /= n;
  st.c /= n;
  st.d /= n;
  return st;
}

FitResult fit_chen_xiao(const Sample& sample) {
  const auto st = chen_xiao_statistics(sample);
  const double den = st.b * st.c - st.a * st.d;
  const double num_alpha = (1.0 + st.b) * st.d + st.b * (1.0 + st.c);
  const double num_beta = (1.0 + st.c) * st.a + st.c * (1.0 + st.b);
  if (vanishes(den, std::max(std::abs(num_alpha), std::abs(num_beta)))) {
    throw Error(ErrorCode::kDegenerate,
                "chen-xiao: common denominator vanishes");
  }
  const auto params =
      require_positive_estimate(num_alpha / den, num_beta / den, "chen-xiao");
  return make_beta_fit(std::string(to_string(BetaMethod::kChenXiao)), params,
                       sample);
}

FitResult fit_tamae(const Sample& sample) {
  require_unit(sample, "fit_tamae");
  double mean_x = 0.0;
  double mean_logit = 0.0;
  double mean_x_logit = 0.0;
  for (double x : sample.values()) {
    const double logit = std::log(x) - std::log1p(-x);
    mean_x += x;
    mean_logit += logit;
    mean_x_logit += x * logit;
  }
  const double n = static_cast<double>(sample.size());
  mean_x /= n;
  mean_logit /= n;
  mean_x_logit /= n;
  const double den = mean_x_logit - mean_x * mean_logit;
  if (vanishes(den, 1.0)) {
    throw Error(ErrorCode::kDegenerate, "tamae: denominator vanishes");
  }
  if (den < 0.0) {
    throw OutOfDomainError("tamae: negative denominator gives negative "
                           "estimates",
                           {mean_x / den, (1.0 - mean_x) / den});
  }
  const auto params =
      require_positive_estimate(mean_x / den, (1.0 - mean_x) / den, "tamae");
  return make_beta_fit(std::string(to_string(BetaMethod::kTamae)), params,
                       sample);
}

RSStatistics rs_statistics(const Sample& sample, RSPair rs,
                           RsVariant variant) {
  require_unit(sample, "rs_statistics");
  require_rs(rs);
  const BetaCache cache(sample);
  const auto st = assemble(cache, power_terms(cache, rs.r), rs.s, variant);
  if (!all_finite(st)) {
    throw Error(ErrorCode::kNonFinite,
                "(r, s) statistics overflow at " + pair_text(rs.r, rs.s));
  }
  return st;
}

FitResult fit_rs(const Sample& sample, RSPair rs, RsVariant variant) {
  require_unit(sample, "fit_rs");
  require_rs(rs);
  const BetaCache cache(sample);
  const auto st = assemble(cache, power_terms(cache, rs.r), rs.s, variant);
  const auto sol = solve_rs(st, rs);
  if (!sol.ok) {
    const std::string where = " at (r, s) = " + pair_text(rs.r, rs.s);
    switch (sol.failure) {
      case ErrorCode::kOutOfDomain:
        throw OutOfDomainError("rs: estimate " +
                                   pair_text(sol.raw_alpha, sol.raw_beta) +
                                   " is outside the parameter space" + where,
                               {sol.raw_alpha, sol.raw_beta});
      case ErrorCode::kNonFinite:
        throw Error(ErrorCode::kNonFinite, "rs: statistics overflow" + where);
      default:
        throw Error(ErrorCode::kDegenerate, "rs: denominator vanishes" + where);
    }
  }
  FitResult fit = make_beta_fit("rs", sol.params, sample);
  fit.selected_rs = rs;
  return fit;
}

FitResult fit_profile(const Sample& sample, const Grid& grid,
                      RsVariant variant) {
  require_unit(sample, "fit_profile");
  const BetaCache cache(sample);

  bool found = false;
  double best_loglik = 0.0;
  BetaParams best_params;
  RSPair best_rs;
  std::vector<RSPair> skipped;

  // Sequential smallest-(r, s)-first scan; only a strict improvement beyond
  // 1e-12 replaces the incumbent.
  for (double r : grid.r_values()) {
    const PowerTerms pt = power_terms(cache, r);
    for (double s : grid.s_values()) {
      const RSPair rs{r, s};
      const auto sol = solve_rs(assemble(cache, pt, s, variant), rs);
      if (!sol.ok) {
        skipped.push_back(rs);
        continue;
      }
      const double ll = cache.sufficient.loglik(sol.params);
      if (!std::isfinite(ll)) {
        skipped.push_back(rs);
        continue;
      }
      if (!found || ll > best_loglik + 1e-12) {
        found = true;
        best_loglik = ll;
        best_params = sol.params;
        best_rs = rs;
      }
    }
  }
  if (!found) {
    throw Error(ErrorCode::kEstimationFailed,
                "profile: every grid point is degenerate or out of domain");
  }
  FitResult fit = make_beta_fit(std::string(to_string(BetaMethod::kProposed)),
                                best_params, sample);
  fit.selected_rs = best_rs;
  fit.skipped_rs = std::move(skipped);
  return fit;
}

FitResult fit_beta(const Sample& sample, BetaMethod method, const Grid& grid) {
  switch (method) {
    case BetaMethod::kMl:
      return fit_ml(sample);
    case BetaMethod::kChenXiao:
      return fit_chen_xiao(sample);
    case BetaMethod::kTamae:
      return fit_tamae(sample);
    case BetaMethod::kProposed:
      return fit_profile(sample, grid);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown beta method");
}

}  // namespace closedfit
