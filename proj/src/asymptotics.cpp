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

#include "closedfit/asymptotics.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <charconv>
#include <cmath>
#include <string>

#include "closedfit/error.hpp"
#include "closedfit/special.hpp"

namespace closedfit {
namespace {

bool vanishes(double denominator, double numerator) {
  return !(std::abs(denominator) >=
           1e-12 * std::max(1.0, std::abs(numerator)));
}

Transform identity_transform() {
  Transform t;
  t.forward = [](double y) { return y; };
  t.inverse = [](double x) { return x; };
  t.derivative_at_inverse = [](double) { return 1.0; };
  t.curvature_at_inverse = [](double) { return 0.0; };
  t.log_inverse = [](double x) { return std::log(x); };
  t.scaled_derivative = [](double x) { return x; };
  t.scaled_curvature = [](double) { return 0.0; };
  return t;
}

Transform one_minus_transform() {
  Transform t;
  t.forward = [](double y) { return 1.0 - y; };
  t.inverse = [](double x) { return 1.0 - x; };
  t.derivative_at_inverse = [](double) { return -1.0; };
  t.curvature_at_inverse = [](double) { return 0.0; };
  t.log_inverse = [](double x) { return std::log1p(-x); };
  t.scaled_derivative = [](double x) { return -(1.0 - x); };
  t.scaled_curvature = [](double) { return 0.0; };
  return t;
}

// g(y) = y / (y + 1)
Transform odds_transform() {
  Transform t;
  t.forward = [](double y) { return y / (y + 1.0); };
  t.inverse = [](double x) { return x / (1.0 - x); };
  t.derivative_at_inverse = [](double x) { return (x - 1.0) * (x - 1.0); };
  t.curvature_at_inverse = [](double x) { return 2.0 * (x - 1.0); };
  t.log_inverse = [](double x) { return std::log(x) - std::log1p(-x); };
  t.scaled_derivative = [](double x) { return x * (1.0 - x); };
  t.scaled_curvature = [](double x) { return -2.0 * x; };
  return t;
}

// g(y) = -log y / (1 - log y)
Transform log_ratio_transform() {
  Transform t;
  t.forward = [](double y) {
    const double l = std::log(y);
    return -l / (1.0 - l);
  };
  t.inverse = [](double x) { return std::exp(x / (x - 1.0)); };
  t.derivative_at_inverse = [](double x) {
    return -(x - 1.0) * (x - 1.0) * std::exp(x / (1.0 - x));
  };
  t.curvature_at_inverse = [](double x) {
    return -(2.0 * x - 1.0) * std::exp(x / (1.0 - x));
  };
  t.log_inverse = [](double x) { return x / (x - 1.0); };
  t.scaled_derivative = [](double x) { return -(x - 1.0) * (x - 1.0); };
  t.scaled_curvature = [](double x) { return -(2.0 * x - 1.0); };
  return t;
}

// g(y) = (1 - y^(1/s))^(1/r)
Transform rs_transform(RSPair rs) {
  const double r = rs.r;
  const double s = rs.s;
  Transform t;
  t.forward = [r, s](double y) {
    return std::pow(1.0 - std::pow(y, 1.0 / s), 1.0 / r);
  };
  t.inverse = [r, s](double x) { return std::pow(1.0 - std::pow(x, r), s); };
  t.derivative_at_inverse = [r, s](double x) {
    const double xr = std::pow(x, r);
    return -std::pow(1.0 - xr, 1.0 - s) * std::pow(x, 1.0 - r) / (r * s);
  };
  t.curvature_at_inverse = [r, s](double x) {
    const double xr = std::pow(x, r);
    return std::pow(1.0 - xr, -s) / xr * (r - 1.0 + (1.0 - r * s) * xr) /
           (r * s);
  };
  t.log_inverse = [r, s](double x) { return s * std::log1p(-std::pow(x, r)); };
  t.scaled_derivative = [r, s](double x) {
    const double xr = std::pow(x, r);
    return -(1.0 - xr) * x / xr / (r * s);
  };
  t.scaled_curvature = [r, s](double x) {
    const double xr = std::pow(x, r);
    return (r - 1.0 + (1.0 - r * s) * xr) / xr / (r * s);
  };
  return t;
}

void fill_half(double x, const Transform& g, ThetaVector& out, int j) {
  const double li = g.log_inverse(x);
  const double sd = g.scaled_derivative(x);
  out[theta_index(1, j)] = sd * li / x;
  out[theta_index(2, j)] = sd * li / (1.0 - x);
  out[theta_index(3, j)] = g.scaled_curvature(x) * li;
  out[theta_index(4, j)] = (2.0 * x - 1.0) * sd * li / (x * (1.0 - x));
  out[theta_index(5, j)] = li;
}

void require_open_unit(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw Error(ErrorCode::kDomain,
                "theta functionals need 0 < x < 1, got " + std::to_string(x));
  }
}

void require_finite(const ThetaVector& theta, double x) {
  for (double v : theta) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite,
                  "theta functional overflows at x = " + std::to_string(x));
    }
  }
}

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

AsymptoticResult finish(const BetaParams& estimates,
                        const Eigen::Matrix2d& cov, double level) {
  AsymptoticResult result;
  result.estimates = estimates;
  result.level = level;
  const double z = normal_critical_value(level);
  const std::array<double, 2> est{estimates.alpha, estimates.beta};
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      result.covariance[i][k] = i <= k ? cov(i, k) : cov(k, i);
    }
    result.std_errors[i] = std::sqrt(std::max(0.0, cov(i, i)));
    result.wald_intervals[i] = {est[i] - z * result.std_errors[i],
                                est[i] + z * result.std_errors[i]};
  }
  return result;
}

}  // namespace

Transform Transform::from_basic(Fn forward, Fn inverse,
                                Fn derivative_at_inverse,
                                Fn curvature_at_inverse) {
  Transform t;
  t.log_inverse = [inverse](double x) { return std::log(inverse(x)); };
  t.scaled_derivative = [inverse, derivative_at_inverse](double x) {
    return derivative_at_inverse(x) * inverse(x);
  };
  t.scaled_curvature = [inverse, curvature_at_inverse](double x) {
    return curvature_at_inverse(x) * inverse(x);
  };
  t.forward = std::move(forward);
  t.inverse = std::move(inverse);
  t.derivative_at_inverse = std::move(derivative_at_inverse);
  t.curvature_at_inverse = std::move(curvature_at_inverse);
  return t;
}

TransformPair rs_transform_pair(RSPair rs) {
  if (!(rs.r > 0.0 && rs.s > 0.0 && std::isfinite(rs.r) &&
        std::isfinite(rs.s))) {
    throw Error(ErrorCode::kInvalidArgument, "r and s must be positive");
  }
  return {"rs(" + std::to_string(rs.r) + "," + std::to_string(rs.s) + ")",
          identity_transform(), rs_transform(rs)};
}

TransformPair builtin_transform_pair(std::string_view name) {
  if (name == "chen-xiao") {
    return {"chen-xiao", identity_transform(), one_minus_transform()};
  }
  if (name == "tamae") {
    return {"tamae", odds_transform(), log_ratio_transform()};
  }
  if (name.starts_with("rs(") && name.ends_with(")")) {
    const auto body = name.substr(3, name.size() - 4);
    const auto comma = body.find(',');
    RSPair rs;
    if (comma != std::string_view::npos &&
        parse_double(body.substr(0, comma), rs.r) &&
        parse_double(body.substr(comma + 1), rs.s)) {
      return rs_transform_pair(rs);
    }
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown transform pair '" + std::string(name) +
                  "'; expected chen-xiao, tamae or rs(r,s)");
}

ThetaVector theta_eval(double x, const TransformPair& pair) {
  require_open_unit(x);
  ThetaVector out{};
  fill_half(x, pair.first, out, 1);
  fill_half(x, pair.second, out, 2);
  require_finite(out, x);
  return out;
}

MomentModel::MomentModel(TransformPair pair)
    : label_(pair.label),
      theta_([p = std::move(pair)](double x) { return theta_eval(x, p); }) {}

MomentModel published_rs_moment_model(RSPair rs) {
  TransformPair pair = rs_transform_pair(rs);
  std::string label = pair.label + "/published";
  return MomentModel(std::move(label), [pair, rs](double x) {
    ThetaVector out = theta_eval(x, pair);
    const double r = rs.r;
    const double s = rs.s;
    const double xr = std::pow(x, r);
    const double l = std::log1p(-xr);
    const double bracket = r - (1.0 - xr) - r * s * xr;
    out[theta_index(3, 2)] =
        bracket * std::exp(s * l + (r - 2.0 * s) * std::log(x)) * l / r;
    require_finite(out, x);
    return out;
  });
}

MomentVector empirical_moments(const Sample& sample, const MomentModel& model) {
  const std::size_t n = sample.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "empirical moments need at least two observations");
  }
  Eigen::Matrix<double, Eigen::Dynamic, 10> rows(n, 10);
  for (std::size_t i = 0; i < n; ++i) {
    const ThetaVector t = model(sample[i]);
    for (int k = 0; k < 10; ++k) rows(static_cast<Eigen::Index>(i), k) = t[k];
  }
  const Eigen::Matrix<double, 1, 10> mean = rows.colwise().mean();
  // Shifted by the first row so constant columns give exact zeros.
  const Eigen::Matrix<double, 1, 10> shift = rows.row(0);
  const auto shifted = (rows.rowwise() - shift).eval();
  const Eigen::Matrix<double, 1, 10> shifted_mean = shifted.colwise().mean();
  const auto centered = (shifted.rowwise() - shifted_mean).eval();
  const Eigen::Matrix<double, 10, 10> cov =
      (centered.transpose() * centered) / static_cast<double>(n - 1);

  MomentVector out;
  out.n = n;
  for (int k = 0; k < 10; ++k) {
    out.mean[k] = mean(k);
    for (int m = 0; m <= k; ++m) {
      out.covariance[k][m] = cov(k, m);
      out.covariance[m][k] = cov(k, m);
    }
  }
  return out;
}

BetaParams xi_maps(const ThetaVector& m) {
  const double x11 = m[theta_index(1, 1)];
  const double x21 = m[theta_index(2, 1)];
  const double x12 = m[theta_index(1, 2)];
  const double x22 = m[theta_index(2, 2)];
  const double rhs1 =
      1.0 + m[theta_index(3, 1)] + m[theta_index(4, 1)] + m[theta_index(5, 1)];
  const double rhs2 =
      1.0 + m[theta_index(3, 2)] + m[theta_index(4, 2)] + m[theta_index(5, 2)];
  // Cramer form of the displayed maps: same values wherever those are
  // defined, and no division by x_{2,1} alone.
  const double det = x12 * x21 - x11 * x22;
  const double num1 = rhs1 * x22 - rhs2 * x21;
  const double num2 = rhs1 * x12 - rhs2 * x11;
  if (vanishes(det, std::max(std::abs(num1), std::abs(num2)))) {
    throw Error(ErrorCode::kDegenerate, "xi maps: denominator vanishes");
  }
  const double xi1 = num1 / det;
  const double xi2 = num2 / det;
  return {xi1, xi2};
}

std::array<ThetaVector, 2> xi_jacobian(const ThetaVector& moments,
                                       double step_scale) {
  std::array<ThetaVector, 2> jac{};
  for (std::size_t i = 0; i < 10; ++i) {
    const double h =
        step_scale * std::max(1e-6, 1e-6 * std::abs(moments[i]));
    ThetaVector up = moments;
    ThetaVector down = moments;
    up[i] += h;
    down[i] -= h;
    const BetaParams fu = xi_maps(up);
    const BetaParams fd = xi_maps(down);
    jac[0][i] = (fu.alpha - fd.alpha) / (2.0 * h);
    jac[1][i] = (fu.beta - fd.beta) / (2.0 * h);
  }
  return jac;
}

double normal_critical_value(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "confidence level must lie in (0, 1)");
  }
  return boost::math::quantile(boost::math::normal(), 0.5 + level / 2.0);
}

AsymptoticResult delta_method(const Sample& sample, const MomentModel& model,
                              double level) {
  if (sample.size() < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "delta method needs at least three observations");
  }
  normal_critical_value(level);
  const MomentVector mv = empirical_moments(sample, model);
  const BetaParams est = xi_maps(mv.mean);
  const auto jac = xi_jacobian(mv.mean);

  Eigen::Matrix<double, 2, 10> a;
  Eigen::Matrix<double, 10, 10> sigma;
  for (int k = 0; k < 10; ++k) {
    a(0, k) = jac[0][k];
    a(1, k) = jac[1][k];
    for (int m = 0; m < 10; ++m) sigma(k, m) = mv.covariance[k][m];
  }
  Eigen::Matrix2d cov =
      a * sigma * a.transpose() / static_cast<double>(mv.n);
  return finish(est, cov, level);
}

AsymptoticResult ml_asymptotics(const BetaParams& estimates, std::size_t n,
                                double level) {
  estimates.validated();
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample size must be >= 1");
  }
  normal_critical_value(level);
  const double t_ab = trigamma(estimates.alpha + estimates.beta);
  Eigen::Matrix2d info;
  info << trigamma(estimates.alpha) - t_ab, -t_ab, -t_ab,
      trigamma(estimates.beta) - t_ab;
  const Eigen::Matrix2d cov = info.inverse() / static_cast<double>(n);
  return finish(estimates, cov, level);
}

}  // namespace closedfit
