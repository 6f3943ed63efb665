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

#include "closedfit/closedfit.h"

#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "closedfit/asymptotics.hpp"
#include "closedfit/dataset.hpp"
#include "closedfit/envelope.hpp"
#include "closedfit/error.hpp"
#include "closedfit/estimators.hpp"
#include "closedfit/montecarlo.hpp"
#include "closedfit/weighted.hpp"

struct cf_sample {
  closedfit::Sample sample;
  std::string column;
};

struct cf_grid {
  closedfit::Grid grid;
};

struct cf_frequency_table {
  closedfit::FrequencyTable table;
  std::vector<std::pair<closedfit::RSPair, std::size_t>> entries;
};

namespace {

using closedfit::ErrorCode;

thread_local std::string last_error;

cf_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return CF_INVALID_ARGUMENT;
    case ErrorCode::kDomain:
      return CF_DOMAIN;
    case ErrorCode::kDegenerate:
      return CF_DEGENERATE;
    case ErrorCode::kOutOfDomain:
      return CF_OUT_OF_DOMAIN;
    case ErrorCode::kNonFinite:
      return CF_NON_FINITE;
    case ErrorCode::kNoConvergence:
      return CF_NO_CONVERGENCE;
    case ErrorCode::kEstimationFailed:
      return CF_ESTIMATION_FAILED;
    case ErrorCode::kIo:
      return CF_IO;
    case ErrorCode::kParse:
      return CF_PARSE;
  }
  return CF_INTERNAL;
}

cf_status fail(cf_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename Body>
cf_status guarded(Body body) {
  try {
    body();
    return CF_OK;
  } catch (const closedfit::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CF_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CF_INTERNAL, e.what());
  } catch (...) {
    return fail(CF_INTERNAL, "unknown failure");
  }
}

#define CF_REQUIRE(cond, what)                                          \
  do {                                                                  \
    if (!(cond)) return fail(CF_INVALID_ARGUMENT, what " must be set"); \
  } while (0)

closedfit::BetaMethod to_method(cf_method m) {
  switch (m) {
    case CF_METHOD_ML:
      return closedfit::BetaMethod::kMl;
    case CF_METHOD_CHEN_XIAO:
      return closedfit::BetaMethod::kChenXiao;
    case CF_METHOD_TAMAE:
      return closedfit::BetaMethod::kTamae;
    case CF_METHOD_PROPOSED:
      return closedfit::BetaMethod::kProposed;
  }
  throw closedfit::Error(ErrorCode::kInvalidArgument, "unknown method");
}

bool valid_method(cf_method m) {
  return m >= CF_METHOD_ML && m <= CF_METHOD_PROPOSED;
}

void fill_fit(const closedfit::FitResult& fit, cf_fit_result* out) {
  const auto& p = fit.beta_params();
  cf_fit_result r{};
  r.alpha = p.alpha;
  r.beta = p.beta;
  r.loglik = fit.loglik;
  r.aic = fit.aic;
  r.bic = fit.bic;
  r.has_rs = fit.selected_rs ? 1 : 0;
  r.r = fit.selected_rs ? fit.selected_rs->r : 0.0;
  r.s = fit.selected_rs ? fit.selected_rs->s : 0.0;
  r.iterations = fit.iterations.value_or(-1);
  r.skipped = fit.skipped_rs.size();
  *out = r;
}

void fill_weighted(const closedfit::FitResult& fit, cf_weighted_result* out) {
  const auto& p = fit.weighted_params();
  *out = {p.mu, p.sigma, p.kronecker ? 1 : 0, fit.loglik, fit.aic, fit.bic};
}

closedfit::Scenario to_scenario(const cf_scenario& s) {
  return {s.alpha, s.beta, s.n, s.replications, s.seed};
}

const closedfit::Grid& grid_or_default(const cf_grid* grid,
                                       std::optional<closedfit::Grid>& slot) {
  if (grid) return grid->grid;
  slot = closedfit::Grid::default_grid();
  return *slot;
}

}  // namespace

extern "C" {

const char* cf_status_name(cf_status status) {
  switch (status) {
    case CF_OK:
      return "ok";
    case CF_INVALID_ARGUMENT:
      return "invalid argument";
    case CF_DOMAIN:
      return "domain error";
    case CF_DEGENERATE:
      return "degenerate sample";
    case CF_OUT_OF_DOMAIN:
      return "estimate out of domain";
    case CF_NON_FINITE:
      return "non-finite statistic";
    case CF_NO_CONVERGENCE:
      return "no convergence";
    case CF_ESTIMATION_FAILED:
      return "estimation failed";
    case CF_IO:
      return "i/o error";
    case CF_PARSE:
      return "parse error";
    case CF_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* cf_last_error(void) { return last_error.c_str(); }

const char* cf_version(void) { return CLOSEDFIT_VERSION; }

cf_status cf_sample_create(const double* values, size_t n, int positive,
                           cf_sample** out) {
  CF_REQUIRE(out, "out");
  CF_REQUIRE(values || n == 0, "values");
  return guarded([&] {
    std::vector<double> v(values, values + n);
    *out = new cf_sample{closedfit::Sample(
                             std::move(v), positive
                                               ? closedfit::Support::kPositive
                                               : closedfit::Support::kUnitInterval),
                         ""};
  });
}

cf_status cf_sample_load_csv(const char* path, const char* column,
                             int positive, cf_sample** out) {
  CF_REQUIRE(out, "out");
  CF_REQUIRE(path, "path");
  return guarded([&] {
    std::optional<std::string> col;
    if (column) col = column;
    auto ds = closedfit::load_dataset(
        path,
        positive ? closedfit::Support::kPositive
                 : closedfit::Support::kUnitInterval,
        col);
    *out = new cf_sample{std::move(ds.sample), std::move(ds.column)};
  });
}

void cf_sample_destroy(cf_sample* sample) { delete sample; }

size_t cf_sample_size(const cf_sample* sample) {
  return sample ? sample->sample.size() : 0;
}

size_t cf_sample_values(const cf_sample* sample, double* out,
                        size_t capacity) {
  if (!sample || !out) return 0;
  const auto v = sample->sample.values();
  const size_t k = std::min(capacity, v.size());
  std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), out);
  return k;
}

const char* cf_sample_column(const cf_sample* sample) {
  return sample ? sample->column.c_str() : "";
}

cf_status cf_grid_create(const double* r_values, size_t nr,
                         const double* s_values, size_t ns, cf_grid** out) {
  CF_REQUIRE(out, "out");
  CF_REQUIRE(r_values || nr == 0, "r_values");
  CF_REQUIRE(s_values || ns == 0, "s_values");
  return guarded([&] {
    *out = new cf_grid{closedfit::Grid(std::vector<double>(r_values, r_values + nr),
                                       std::vector<double>(s_values, s_values + ns))};
  });
}

cf_status cf_grid_uniform(double rmin, double rmax, double rstep, double smin,
                          double smax, double sstep, cf_grid** out) {
  CF_REQUIRE(out, "out");
  return guarded([&] {
    *out = new cf_grid{
        closedfit::Grid::uniform(rmin, rmax, rstep, smin, smax, sstep)};
  });
}

cf_status cf_grid_default(cf_grid** out) {
  CF_REQUIRE(out, "out");
  return guarded([&] { *out = new cf_grid{closedfit::Grid::default_grid()}; });
}

void cf_grid_destroy(cf_grid* grid) { delete grid; }

size_t cf_grid_size(const cf_grid* grid) {
  return grid ? grid->grid.size() : 0;
}

const char* cf_method_key(cf_method method) {
  if (!valid_method(method)) return "";
  return closedfit::to_string(to_method(method)).data();
}

const char* cf_method_label(cf_method method) {
  if (!valid_method(method)) return "";
  return closedfit::display_name(to_method(method)).data();
}

cf_status cf_method_parse(const char* key, cf_method* out) {
  CF_REQUIRE(key, "key");
  CF_REQUIRE(out, "out");
  const auto m = closedfit::parse_beta_method(key);
  if (!m) {
    return fail(CF_INVALID_ARGUMENT,
                std::string("unknown estimator '") + key +
                    "'; expected ml, chen-xiao, tamae or proposed");
  }
  *out = static_cast<cf_method>(static_cast<int>(*m));
  return CF_OK;
}

cf_status cf_fit_beta(const cf_sample* sample, cf_method method,
                      const cf_grid* grid, cf_fit_result* out) {
  CF_REQUIRE(sample, "sample");
  CF_REQUIRE(out, "out");
  return guarded([&] {
    std::optional<closedfit::Grid> slot;
    fill_fit(closedfit::fit_beta(sample->sample, to_method(method),
                                 grid_or_default(grid, slot)),
             out);
  });
}

cf_status cf_fit_rs(const cf_sample* sample, double r, double s, int derived,
                    cf_fit_result* out) {
  CF_REQUIRE(sample, "sample");
  CF_REQUIRE(out, "out");
  return guarded([&] {
    fill_fit(closedfit::fit_rs(sample->sample, {r, s},
                               derived ? closedfit::RsVariant::kDerived
                                       : closedfit::RsVariant::kPublished),
             out);
  });
}

cf_status cf_asymptotics(const cf_sample* sample, cf_method method,
                         const cf_fit_result* fit, double level,
                         cf_asymptotic_result* out) {
  CF_REQUIRE(sample, "sample");
  CF_REQUIRE(fit, "fit");
  CF_REQUIRE(out, "out");
  return guarded([&] {
    closedfit::AsymptoticResult res;
    switch (to_method(method)) {
      case closedfit::BetaMethod::kMl:
        res = closedfit::ml_asymptotics({fit->alpha, fit->beta},
                                        sample->sample.size(), level);
        break;
      case closedfit::BetaMethod::kChenXiao:
        res = closedfit::delta_method(
            sample->sample, closedfit::builtin_transform_pair("chen-xiao"),
            level);
        break;
      case closedfit::BetaMethod::kTamae:
        res = closedfit::delta_method(
            sample->sample, closedfit::builtin_transform_pair("tamae"), level);
        break;
      case closedfit::BetaMethod::kProposed:
        if (!fit->has_rs) {
          throw closedfit::Error(ErrorCode::kInvalidArgument,
                                 "proposed fit carries no (r, s)");
        }
        res = closedfit::delta_method(
            sample->sample,
            closedfit::published_rs_moment_model({fit->r, fit->s}), level);
        break;
    }
    cf_asymptotic_result r{};
    r.alpha = res.estimates.alpha;
    r.beta = res.estimates.beta;
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < 2; ++k) r.covariance[i][k] = res.covariance[i][k];
    }
    r.se_alpha = res.std_errors[0];
    r.se_beta = res.std_errors[1];
    r.alpha_lower = res.wald_intervals[0].lower;
    r.alpha_upper = res.wald_intervals[0].upper;
    r.beta_lower = res.wald_intervals[1].lower;
    r.beta_upper = res.wald_intervals[1].upper;
    r.level = res.level;
    *out = r;
  });
}

const char* cf_generator_names(void) {
  static const std::string names = [] {
    std::string s;
    for (auto k : closedfit::kBuiltinGenerators) {
      if (!s.empty()) s += ",";
      s += k;
    }
    return s;
  }();
  return names.c_str();
}

cf_status cf_fit_weighted(const cf_sample* sample, const char* generator,
                          int kronecker, cf_weighted_result* out) {
  CF_REQUIRE(sample, "sample");
  CF_REQUIRE(generator, "generator");
  CF_REQUIRE(out, "out");
  return guarded([&] {
    const auto gen = closedfit::builtin_generator(generator);
    const bool k = kronecker < 0 ? gen.default_kronecker : kronecker != 0;
    fill_weighted(closedfit::fit_weighted(sample->sample, gen, k), out);
  });
}

cf_status cf_fit_weighted_exp(const cf_sample* sample, const char* generator,
                              int kronecker, double r,
                              cf_weighted_result* out) {
  CF_REQUIRE(sample, "sample");
  CF_REQUIRE(generator, "generator");
  CF_REQUIRE(out, "out");
  return guarded([&] {
    const auto gen = closedfit::builtin_generator(generator);
    const bool k = kronecker < 0 ? gen.default_kronecker : kronecker != 0;
    fill_weighted(
        closedfit::fit_weighted_exp_variant(sample->sample, gen, k, r), out);
  });
}

cf_status cf_run_scenario(const cf_scenario* scenario, const cf_method* methods,
                          size_t count, const cf_grid* grid, unsigned threads,
                          cf_metrics_row* out) {
  CF_REQUIRE(scenario, "scenario");
  CF_REQUIRE(methods || count == 0, "methods");
  CF_REQUIRE(out || count == 0, "out");
  return guarded([&] {
    std::vector<closedfit::BetaMethod> ms;
    for (size_t i = 0; i < count; ++i) ms.push_back(to_method(methods[i]));
    std::optional<closedfit::Grid> slot;
    const auto rows =
        closedfit::run_scenario(to_scenario(*scenario), ms,
                                grid_or_default(grid, slot), {threads});
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows[i];
      out[i] = {methods[i],
                {row.alpha.mare, row.alpha.rmse, row.alpha.se},
                {row.beta.mare, row.beta.rmse, row.beta.se},
                row.successes,
                row.failures};
    }
  });
}

cf_status cf_profile_frequencies(const cf_scenario* scenario,
                                 const cf_grid* grid, unsigned threads,
                                 cf_frequency_table** out) {
  CF_REQUIRE(scenario, "scenario");
  CF_REQUIRE(out, "out");
  return guarded([&] {
    std::optional<closedfit::Grid> slot;
    auto table = closedfit::profile_frequencies(
        to_scenario(*scenario), grid_or_default(grid, slot), {threads});
    auto* handle = new cf_frequency_table{std::move(table), {}};
    for (const auto& e : handle->table.counts) handle->entries.push_back(e);
    *out = handle;
  });
}

void cf_frequency_table_destroy(cf_frequency_table* table) { delete table; }

cf_frequency_summary cf_frequency_table_summary(
    const cf_frequency_table* table) {
  if (!table) return {};
  const auto& t = table->table;
  return {t.modal.r, t.modal.s, t.modal_share, t.successes, t.failures};
}

size_t cf_frequency_table_size(const cf_frequency_table* table) {
  return table ? table->entries.size() : 0;
}

cf_status cf_frequency_table_entry(const cf_frequency_table* table,
                                   size_t index, double* r, double* s,
                                   size_t* count) {
  CF_REQUIRE(table, "table");
  if (index >= table->entries.size()) {
    return fail(CF_INVALID_ARGUMENT, "frequency table index out of range");
  }
  const auto& [rs, c] = table->entries[index];
  if (r) *r = rs.r;
  if (s) *s = rs.s;
  if (count) *count = c;
  return CF_OK;
}

cf_status cf_envelope(const cf_sample* sample, double alpha, double beta,
                      size_t simulations, uint64_t seed, double coverage,
                      cf_envelope_row* out) {
  CF_REQUIRE(sample, "sample");
  CF_REQUIRE(out, "out");
  return guarded([&] {
    const auto rows = closedfit::compute_envelope(
        sample->sample, {alpha, beta}, {simulations, seed, coverage});
    for (size_t i = 0; i < rows.size(); ++i) {
      out[i] = {rows[i].rank, rows[i].theoretical, rows[i].observed,
                rows[i].lower, rows[i].upper};
    }
  });
}

}  // extern "C"
