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

#include "closedfit/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <thread>

#include "closedfit/error.hpp"
#include "closedfit/rng.hpp"

namespace closedfit {
namespace {

// Calls body(i) for i in [0, count) on `threads` workers. Each index is
// handled exactly once; callers write to slot i only.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

ParamMetrics param_metrics(std::span<const BetaParams> est, double truth,
                           double BetaParams::*field) {
  const double r = static_cast<double>(est.size());
  double mean = 0.0;
  double abs_rel = 0.0;
  double sq = 0.0;
  for (const auto& p : est) {
    const double v = p.*field;
    mean += v;
    abs_rel += std::abs(v / truth - 1.0);
    sq += (v - truth) * (v - truth);
  }
  mean /= r;
  double centered = 0.0;
  for (const auto& p : est) {
    const double d = p.*field - mean;
    centered += d * d;
  }
  return {abs_rel / r, std::sqrt(sq / r), std::sqrt(centered / r)};
}

}  // namespace

void Scenario::validate() const {
  if (!(alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) &&
        std::isfinite(beta))) {
    throw Error(ErrorCode::kInvalidArgument,
                "scenario shapes must be positive");
  }
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "scenario needs n >= 2");
  }
  if (replications < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "scenario needs at least one replication");
  }
}

std::vector<Scenario> grid_scenarios(std::size_t n, std::size_t replications,
                                     std::uint64_t seed) {
  std::vector<Scenario> out;
  for (double a : {0.5, 1.0, 2.0}) {
    for (double b : {0.5, 1.0, 2.0}) {
      out.push_back({a, b, n, replications, seed});
    }
  }
  return out;
}

Sample replication_sample(const Scenario& sc, std::size_t index) {
  RngStream rng = RngStream::derive(sc.seed, index);
  return beta_sample(sc.truth(), sc.n, rng);
}

Metrics compute_metrics(std::span<const BetaParams> estimates,
                        const BetaParams& truth) {
  if (estimates.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "metrics need at least one estimate");
  }
  truth.validated();
  Metrics m;
  m.alpha = param_metrics(estimates, truth.alpha, &BetaParams::alpha);
  m.beta = param_metrics(estimates, truth.beta, &BetaParams::beta);
  m.count = estimates.size();
  return m;
}

NamedEstimator make_estimator(BetaMethod method, const Grid& grid) {
  return {std::string(display_name(method)), [method, grid](const Sample& s) {
            return fit_beta(s, method, grid).beta_params();
          }};
}

std::vector<MetricsRow> run_scenario(const Scenario& sc,
                                     std::span<const NamedEstimator> estimators,
                                     const RunOptions& options) {
  sc.validate();
  const std::size_t reps = sc.replications;
  const std::size_t k = estimators.size();
  std::vector<std::optional<BetaParams>> slots(reps * k);

  parallel_for(reps, options.threads, [&](std::size_t i) {
    const Sample sample = replication_sample(sc, i);
    for (std::size_t e = 0; e < k; ++e) {
      try {
        slots[i * k + e] = estimators[e].fit(sample);
      } catch (const Error&) {
        // counted as a failure below
      }
    }
  });

  std::vector<MetricsRow> rows;
  rows.reserve(k);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t e = 0; e < k; ++e) {
    std::vector<BetaParams> ok;
    ok.reserve(reps);
    for (std::size_t i = 0; i < reps; ++i) {
      if (slots[i * k + e]) ok.push_back(*slots[i * k + e]);
    }
    MetricsRow row;
    row.scenario = sc;
    row.estimator = estimators[e].label;
    row.successes = ok.size();
    row.failures = reps - ok.size();
    if (ok.empty()) {
      row.alpha = row.beta = {nan, nan, nan};
    } else {
      const Metrics m = compute_metrics(ok, sc.truth());
      row.alpha = m.alpha;
      row.beta = m.beta;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MetricsRow> run_scenario(const Scenario& sc,
                                     std::span<const BetaMethod> methods,
                                     const Grid& grid,
                                     const RunOptions& options) {
  std::vector<NamedEstimator> estimators;
  estimators.reserve(methods.size());
  for (BetaMethod m : methods) estimators.push_back(make_estimator(m, grid));
  return run_scenario(sc, estimators, options);
}

FrequencyTable profile_frequencies(const Scenario& sc, const Grid& grid,
                                   const RunOptions& options) {
  sc.validate();
  std::vector<std::optional<RSPair>> picks(sc.replications);
  parallel_for(sc.replications, options.threads, [&](std::size_t i) {
    try {
      picks[i] = fit_profile(replication_sample(sc, i), grid).selected_rs;
    } catch (const Error&) {
    }
  });

  FrequencyTable table;
  for (const auto& p : picks) {
    if (p) {
      ++table.counts[*p];
      ++table.successes;
    } else {
      ++table.failures;
    }
  }
  std::size_t best = 0;
  for (const auto& [rs, count] : table.counts) {
    if (count > best) {
      best = count;
      table.modal = rs;
    }
  }
  if (table.successes > 0) {
    table.modal_share =
        static_cast<double>(best) / static_cast<double>(table.successes);
  }
  return table;
}

}  // namespace closedfit
