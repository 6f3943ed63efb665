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

#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "closedfit/closedfit.h"

namespace closedfit::cli {
namespace {

using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Raised for bad option values; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised for library failures; maps to exit code 1.
struct RunError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(cf_status st) {
  if (st != CF_OK) throw RunError(cf_last_error());
}

struct SampleDeleter {
  void operator()(cf_sample* p) const { cf_sample_destroy(p); }
};
struct GridDeleter {
  void operator()(cf_grid* p) const { cf_grid_destroy(p); }
};
struct TableDeleter {
  void operator()(cf_frequency_table* p) const { cf_frequency_table_destroy(p); }
};
using SamplePtr = std::unique_ptr<cf_sample, SampleDeleter>;
using GridPtr = std::unique_ptr<cf_grid, GridDeleter>;
using TablePtr = std::unique_ptr<cf_frequency_table, TableDeleter>;

// ---- formatting -----------------------------------------------------------

std::string fmt(const char* spec, double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string exact(double v) { return fmt("%.17g", v); }
std::string four(double v) { return std::isnan(v) ? "-" : fmt("%.4f", v); }

std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++w;
  }
  return w;
}

std::string pad(const std::string& s, std::size_t width, bool right = false) {
  const std::size_t w = display_width(s);
  const std::string fill(w < width ? width - w : 0, ' ');
  return right ? fill + s : s + fill;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

double parse_number(const std::string& text) {
  if (text.empty()) return kNaN;
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::runtime_error("not a number: '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double option_number(const std::string& text, const std::string& what) {
  try {
    const double v = parse_number(text);
    if (std::isnan(v)) throw std::runtime_error("empty");
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid " + what + ": '" + text + "'");
  }
}

json number_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }
double from_json(const json& j) {
  return j.is_null() ? kNaN : j.get<double>();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw RunError("cannot write '" + path + "'");
  f.precision(17);
  return f;
}

// ---- shared option parsing ------------------------------------------------

GridPtr make_grid(const std::string& spec) {
  cf_grid* g = nullptr;
  if (spec.empty()) {
    check(cf_grid_default(&g));
    return GridPtr(g);
  }
  const auto axes = split(spec, ',');
  if (axes.size() != 2) {
    throw UsageError("--grid expects rmin:rmax:step,smin:smax:step");
  }
  double v[6];
  for (int a = 0; a < 2; ++a) {
    const auto parts = split(axes[a], ':');
    if (parts.size() != 3) {
      throw UsageError("--grid expects rmin:rmax:step,smin:smax:step");
    }
    for (int k = 0; k < 3; ++k) v[a * 3 + k] = option_number(parts[k], "grid");
  }
  if (cf_grid_uniform(v[0], v[1], v[2], v[3], v[4], v[5], &g) != CF_OK) {
    throw UsageError(cf_last_error());
  }
  return GridPtr(g);
}

std::vector<cf_method> parse_methods(const std::string& spec) {
  std::vector<cf_method> out;
  for (const auto& key : split(spec, ',')) {
    cf_method m;
    if (cf_method_parse(key.c_str(), &m) != CF_OK) {
      throw UsageError(cf_last_error());
    }
    out.push_back(m);
  }
  if (out.empty()) throw UsageError("no estimators selected");
  return out;
}

struct ShapePair {
  double alpha;
  double beta;
};

std::vector<ShapePair> parse_scenarios(const std::string& spec) {
  std::vector<ShapePair> out;
  if (spec == "all") {
    for (double a : {0.5, 1.0, 2.0}) {
      for (double b : {0.5, 1.0, 2.0}) out.push_back({a, b});
    }
    return out;
  }
  for (const auto& item : split(spec, ',')) {
    const auto ab = split(item, ':');
    if (ab.size() != 2) {
      throw UsageError("--scenarios expects 'all' or alpha:beta[,alpha:beta]");
    }
    out.push_back({option_number(ab[0], "scenario alpha"),
                   option_number(ab[1], "scenario beta")});
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& spec) {
  std::vector<std::size_t> out;
  for (const auto& item : split(spec, ',')) {
    const double v = option_number(item, "sample size");
    if (!(v >= 1.0) || v != std::floor(v)) {
      throw UsageError("invalid sample size: '" + item + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

SamplePtr load(const std::string& path, const std::string& column,
               bool positive) {
  cf_sample* s = nullptr;
  check(cf_sample_load_csv(path.c_str(), column.empty() ? nullptr : column.c_str(),
                           positive ? 1 : 0, &s));
  return SamplePtr(s);
}

// ---- fit ------------------------------------------------------------------

struct FitOptions {
  std::string file;
  std::string column;
  std::string estimators = "ml,chen-xiao,tamae,proposed";
  std::string grid;
  double level = 0.95;
  std::string output;
  bool json = false;
  std::uint64_t seed = 1;
};

FitReport fit_report(const FitOptions& o) {
  auto sample = load(o.file, o.column, false);
  const auto grid = make_grid(o.grid);
  const auto methods = parse_methods(o.estimators);

  FitReport report;
  report.source = o.file;
  report.column = cf_sample_column(sample.get());
  report.n = cf_sample_size(sample.get());
  for (cf_method m : methods) {
    FitReportRow row;
    row.estimator = cf_method_key(m);
    row.level = o.level;
    cf_fit_result fit{};
    const cf_status st = cf_fit_beta(sample.get(), m, grid.get(), &fit);
    if (st != CF_OK) {
      row.status = cf_status_name(st);
      row.message = cf_last_error();
      row.alpha = row.beta = row.loglik = row.aic = row.bic = kNaN;
      row.r = row.s = kNaN;
      row.se_alpha = row.se_beta = kNaN;
      row.alpha_lower = row.alpha_upper = row.beta_lower = row.beta_upper = kNaN;
      report.rows.push_back(row);
      continue;
    }
    row.status = "ok";
    row.alpha = fit.alpha;
    row.beta = fit.beta;
    row.loglik = fit.loglik;
    row.aic = fit.aic;
    row.bic = fit.bic;
    row.r = fit.has_rs ? fit.r : kNaN;
    row.s = fit.has_rs ? fit.s : kNaN;
    cf_asymptotic_result asym{};
    const cf_status ast = cf_asymptotics(sample.get(), m, &fit, o.level, &asym);
    if (ast == CF_OK) {
      row.se_alpha = asym.se_alpha;
      row.se_beta = asym.se_beta;
      row.alpha_lower = asym.alpha_lower;
      row.alpha_upper = asym.alpha_upper;
      row.beta_lower = asym.beta_lower;
      row.beta_upper = asym.beta_upper;
    } else {
      row.se_alpha = row.se_beta = kNaN;
      row.alpha_lower = row.alpha_upper = row.beta_lower = row.beta_upper = kNaN;
      row.message = std::string("standard errors unavailable: ") + cf_last_error();
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string label_of(const std::string& key) {
  cf_method m;
  return cf_method_parse(key.c_str(), &m) == CF_OK ? cf_method_label(m) : key;
}

void print_fit_table(std::ostream& out, const FitReport& report) {
  out << "data: " << report.source << " (column '" << report.column
      << "', n = " << report.n << ")\n";
  out << pad("estimator", 14) << pad("alpha", 10, true) << pad("beta", 10, true)
      << pad("loglik", 10, true) << pad("AIC", 10, true) << pad("BIC", 10, true)
      << pad("se(alpha)", 11, true) << pad("se(beta)", 10, true) << "  (r, s)\n";
  for (const auto& row : report.rows) {
    out << pad(label_of(row.estimator), 14);
    if (row.status != "ok") {
      out << "failed: " << row.message << '\n';
      continue;
    }
    out << pad(four(row.alpha), 10, true) << pad(four(row.beta), 10, true)
        << pad(four(row.loglik), 10, true) << pad(four(row.aic), 10, true)
        << pad(four(row.bic), 10, true) << pad(four(row.se_alpha), 11, true)
        << pad(four(row.se_beta), 10, true);
    if (!std::isnan(row.r)) {
      out << "  (" << fmt("%g", row.r) << ", " << fmt("%g", row.s) << ")";
    }
    out << '\n';
  }
  if (!report.rows.empty()) {
    out << "intervals: Wald at level " << fmt("%g", report.rows.front().level)
        << '\n';
  }
}

int cmd_fit(const FitOptions& o, std::ostream& out) {
  const FitReport report = fit_report(o);
  print_fit_table(out, report);
  if (!o.output.empty()) {
    auto f = open_output(o.output);
    if (o.json) {
      write_fit_report_json(f, report);
    } else {
      write_fit_report_csv(f, report);
    }
  }
  for (const auto& row : report.rows) {
    if (row.status == "ok") return 0;
  }
  return 1;
}

// ---- simulate -------------------------------------------------------------

struct SimulateOptions {
  std::string scenarios = "all";
  std::string sizes = "10,20,50,100";
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
  std::string estimators = "ml,chen-xiao,tamae,proposed";
  std::string grid;
  unsigned threads = 1;
  std::string output;
  bool json = false;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const auto scenarios = parse_scenarios(o.scenarios);
  const auto sizes = parse_sizes(o.sizes);
  const auto methods = parse_methods(o.estimators);
  const auto grid = make_grid(o.grid);
  if (o.reps < 1) throw UsageError("--reps must be at least 1");

  json rows = json::array();
  std::ostringstream csv;
  csv << "alpha,beta,n,replications,seed,estimator,mare_alpha,mare_beta,"
         "rmse_alpha,rmse_beta,se_alpha,se_beta,successes,failures\n";
  for (const auto& sc : scenarios) {
    out << "scenario (alpha, beta) = (" << fmt("%.1f", sc.alpha) << ", "
        << fmt("%.1f", sc.beta) << "), R = " << o.reps << "\n";
    out << pad("n", 5, true) << "  " << pad("estimator", 14)
        << pad("MARE(a)", 9, true) << pad("MARE(b)", 9, true)
        << pad("RMSE(a)", 9, true) << pad("RMSE(b)", 9, true)
        << pad("SE(a)", 9, true) << pad("SE(b)", 9, true)
        << pad("fail", 6, true) << '\n';
    for (std::size_t n : sizes) {
      cf_scenario scn{sc.alpha, sc.beta, n, o.reps, o.seed};
      std::vector<cf_metrics_row> res(methods.size());
      check(cf_run_scenario(&scn, methods.data(), methods.size(), grid.get(),
                            o.threads, res.data()));
      for (const auto& r : res) {
        out << pad(std::to_string(n), 5, true) << "  "
            << pad(cf_method_label(r.method), 14)
            << pad(four(r.alpha.mare), 9, true) << pad(four(r.beta.mare), 9, true)
            << pad(four(r.alpha.rmse), 9, true) << pad(four(r.beta.rmse), 9, true)
            << pad(four(r.alpha.se), 9, true) << pad(four(r.beta.se), 9, true)
            << pad(std::to_string(r.failures), 6, true) << '\n';
        csv << exact(sc.alpha) << ',' << exact(sc.beta) << ',' << n << ','
            << o.reps << ',' << o.seed << ',' << cf_method_key(r.method) << ','
            << four(r.alpha.mare) << ',' << four(r.beta.mare) << ','
            << four(r.alpha.rmse) << ',' << four(r.beta.rmse) << ','
            << four(r.alpha.se) << ',' << four(r.beta.se) << ','
            << r.successes << ',' << r.failures << '\n';
        auto metric = [](double v) {
          return std::isnan(v) ? json(nullptr) : json(std::round(v * 1e4) / 1e4);
        };
        rows.push_back({{"alpha", sc.alpha},
                        {"beta", sc.beta},
                        {"n", n},
                        {"replications", o.reps},
                        {"seed", o.seed},
                        {"estimator", cf_method_key(r.method)},
                        {"mare_alpha", metric(r.alpha.mare)},
                        {"mare_beta", metric(r.beta.mare)},
                        {"rmse_alpha", metric(r.alpha.rmse)},
                        {"rmse_beta", metric(r.beta.rmse)},
                        {"se_alpha", metric(r.alpha.se)},
                        {"se_beta", metric(r.beta.se)},
                        {"successes", r.successes},
                        {"failures", r.failures}});
      }
    }
    out << '\n';
  }
  if (!o.output.empty()) {
    auto f = open_output(o.output);
    if (o.json) {
      f << json{{"command", "simulate"}, {"rows", rows}}.dump(2) << '\n';
    } else {
      f << csv.str();
    }
  }
  return 0;
}

// ---- envelope -------------------------------------------------------------

struct EnvelopeOptions {
  std::string file;
  std::string column;
  std::size_t sims = 1000;
  std::string method = "ml";
  std::string params;
  std::string grid;
  double coverage = 0.95;
  std::uint64_t seed = 1;
  std::string output;
  bool json = false;
};

int cmd_envelope(const EnvelopeOptions& o, std::ostream& out) {
  auto sample = load(o.file, o.column, false);
  double alpha = 0.0;
  double beta = 0.0;
  std::string fitted_by;
  if (!o.params.empty()) {
    const auto ab = split(o.params, ',');
    if (ab.size() != 2) throw UsageError("--params expects alpha,beta");
    alpha = option_number(ab[0], "alpha");
    beta = option_number(ab[1], "beta");
    fitted_by = "given";
  } else {
    cf_method m;
    if (cf_method_parse(o.method.c_str(), &m) != CF_OK) {
      throw UsageError(cf_last_error());
    }
    const auto grid = make_grid(o.grid);
    cf_fit_result fit{};
    check(cf_fit_beta(sample.get(), m, grid.get(), &fit));
    alpha = fit.alpha;
    beta = fit.beta;
    fitted_by = cf_method_key(m);
  }
  const std::size_t n = cf_sample_size(sample.get());
  std::vector<cf_envelope_row> rows(n);
  check(cf_envelope(sample.get(), alpha, beta, o.sims, o.seed, o.coverage,
                    rows.data()));

  std::size_t inside = 0;
  for (const auto& r : rows) {
    if (r.observed >= r.lower && r.observed <= r.upper) ++inside;
  }
  out << "model: Beta(" << four(alpha) << ", " << four(beta) << ") ["
      << fitted_by << "], " << o.sims << " simulations, "
      << fmt("%g", o.coverage * 100.0) << "% pointwise band\n";
  out << pad("rank", 5, true) << pad("theoretical", 13, true)
      << pad("observed", 10, true) << pad("lower", 10, true)
      << pad("upper", 10, true) << '\n';
  for (const auto& r : rows) {
    out << pad(std::to_string(r.rank), 5, true)
        << pad(four(r.theoretical), 13, true) << pad(four(r.observed), 10, true)
        << pad(four(r.lower), 10, true) << pad(four(r.upper), 10, true)
        << (r.observed >= r.lower && r.observed <= r.upper ? "" : "  *") << '\n';
  }
  out << inside << " of " << n << " points inside the band\n";

  if (!o.output.empty()) {
    auto f = open_output(o.output);
    if (o.json) {
      json js = json::array();
      for (const auto& r : rows) {
        js.push_back({{"rank", r.rank},
                      {"theoretical", r.theoretical},
                      {"observed", r.observed},
                      {"lower", r.lower},
                      {"upper", r.upper}});
      }
      f << json{{"command", "envelope"},
                {"alpha", alpha},
                {"beta", beta},
                {"simulations", o.sims},
                {"coverage", o.coverage},
                {"seed", o.seed},
                {"rows", js}}
               .dump(2)
        << '\n';
    } else {
      f << "rank,theoretical,observed,lower,upper\n";
      for (const auto& r : rows) {
        f << r.rank << ',' << exact(r.theoretical) << ',' << exact(r.observed)
          << ',' << exact(r.lower) << ',' << exact(r.upper) << '\n';
      }
    }
  }
  return 0;
}

// ---- fit-weighted ---------------------------------------------------------

struct WeightedOptions {
  std::string file;
  std::string column;
  std::string generator;
  bool kronecker = false;
  std::optional<double> r;
  std::string output;
  bool json = false;
  std::uint64_t seed = 1;
};

int cmd_fit_weighted(const WeightedOptions& o, std::ostream& out) {
  const std::string names = cf_generator_names();
  bool known = false;
  for (const auto& g : split(names, ',')) known = known || g == o.generator;
  if (!known) {
    throw UsageError("unknown generator '" + o.generator + "'; built-ins: " +
                     names);
  }
  auto sample = load(o.file, o.column, true);
  const int kron = o.kronecker ? 1 : -1;
  cf_weighted_result res{};
  if (o.r) {
    check(cf_fit_weighted_exp(sample.get(), o.generator.c_str(), kron, *o.r,
                              &res));
  } else {
    check(cf_fit_weighted(sample.get(), o.generator.c_str(), kron, &res));
  }
  const std::string variant = o.r ? "exp" : "basic";
  out << "generator: " << o.generator << " (" << (res.kronecker ? "a = b" : "a != b")
      << ", " << variant << " transform";
  if (o.r) out << ", r = " << fmt("%g", *o.r);
  out << "), n = " << cf_sample_size(sample.get()) << '\n';
  out << pad("mu", 10, true) << pad("sigma", 10, true) << pad("loglik", 11, true)
      << pad("AIC", 11, true) << pad("BIC", 11, true) << '\n';
  out << pad(four(res.mu), 10, true) << pad(four(res.sigma), 10, true)
      << pad(four(res.loglik), 11, true) << pad(four(res.aic), 11, true)
      << pad(four(res.bic), 11, true) << '\n';
  if (!o.output.empty()) {
    auto f = open_output(o.output);
    const double r = o.r ? *o.r : kNaN;
    if (o.json) {
      f << json{{"command", "fit-weighted"},
                {"generator", o.generator},
                {"kronecker", res.kronecker != 0},
                {"variant", variant},
                {"r", number_or_null(r)},
                {"mu", res.mu},
                {"sigma", res.sigma},
                {"loglik", res.loglik},
                {"aic", res.aic},
                {"bic", res.bic}}
               .dump(2)
        << '\n';
    } else {
      f << "generator,kronecker,variant,r,mu,sigma,loglik,aic,bic\n"
        << o.generator << ',' << res.kronecker << ',' << variant << ','
        << exact(r) << ',' << exact(res.mu) << ',' << exact(res.sigma) << ','
        << exact(res.loglik) << ',' << exact(res.aic) << ',' << exact(res.bic)
        << '\n';
    }
  }
  return 0;
}

// ---- profile-freq ---------------------------------------------------------

struct FreqOptions {
  std::string scenarios = "1:1,0.5:2";
  std::size_t n = 100;
  std::size_t reps = 1000;
  std::uint64_t seed = 1;
  std::string grid;
  unsigned threads = 1;
  std::size_t top = 5;
  std::string output;
  bool json = false;
};

int cmd_profile_freq(const FreqOptions& o, std::ostream& out) {
  const auto scenarios = parse_scenarios(o.scenarios);
  const auto grid = make_grid(o.grid);
  if (o.reps < 1) throw UsageError("--reps must be at least 1");

  std::ostringstream csv;
  csv << "alpha,beta,n,replications,seed,r,s,count,share,modal\n";
  json js = json::array();
  out << pad("(alpha, beta)", 14) << pad("mode (r, s)", 14)
      << pad("share", 8, true) << pad("failures", 10, true) << "  top points\n";
  for (const auto& sc : scenarios) {
    cf_scenario scn{sc.alpha, sc.beta, o.n, o.reps, o.seed};
    cf_frequency_table* raw = nullptr;
    check(cf_profile_frequencies(&scn, grid.get(), o.threads, &raw));
    TablePtr table(raw);
    const auto sum = cf_frequency_table_summary(table.get());

    struct Entry {
      double r, s;
      std::size_t count;
    };
    std::vector<Entry> entries(cf_frequency_table_size(table.get()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
      check(cf_frequency_table_entry(table.get(), i, &entries[i].r,
                                     &entries[i].s, &entries[i].count));
    }
    const std::string label =
        "(" + fmt("%.1f", sc.alpha) + ", " + fmt("%.1f", sc.beta) + ")";
    const std::string mode =
        "(" + fmt("%.1f", sum.modal_r) + ", " + fmt("%.1f", sum.modal_s) + ")";
    out << pad(label, 14) << pad(mode, 14)
        << pad(fmt("%.1f", sum.modal_share * 100.0), 8, true)
        << pad(std::to_string(sum.failures), 10, true) << "  ";
    auto ranked = entries;
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Entry& a, const Entry& b) { return a.count > b.count; });
    for (std::size_t i = 0; i < ranked.size() && i < o.top; ++i) {
      out << (i ? ", " : "") << "(" << fmt("%.1f", ranked[i].r) << ","
          << fmt("%.1f", ranked[i].s) << ") " << ranked[i].count;
    }
    out << '\n';

    json counts = json::array();
    for (const auto& e : entries) {
      const double share =
          static_cast<double>(e.count) / static_cast<double>(sum.successes);
      const bool modal = e.r == sum.modal_r && e.s == sum.modal_s;
      csv << exact(sc.alpha) << ',' << exact(sc.beta) << ',' << o.n << ','
          << o.reps << ',' << o.seed << ',' << exact(e.r) << ',' << exact(e.s)
          << ',' << e.count << ',' << four(share) << ',' << (modal ? 1 : 0)
          << '\n';
      counts.push_back({{"r", e.r}, {"s", e.s}, {"count", e.count}});
    }
    js.push_back({{"alpha", sc.alpha},
                  {"beta", sc.beta},
                  {"n", o.n},
                  {"replications", o.reps},
                  {"seed", o.seed},
                  {"modal", {{"r", sum.modal_r}, {"s", sum.modal_s}}},
                  {"modal_share", sum.modal_share},
                  {"successes", sum.successes},
                  {"failures", sum.failures},
                  {"counts", counts}});
  }
  if (!o.output.empty()) {
    auto f = open_output(o.output);
    if (o.json) {
      f << json{{"command", "profile-freq"}, {"scenarios", js}}.dump(2) << '\n';
    } else {
      f << csv.str();
    }
  }
  return 0;
}

}  // namespace

// ---- report I/O -----------------------------------------------------------

namespace {
const char* const kFitColumns[] = {
    "estimator",   "status",      "alpha",      "beta",       "loglik",
    "aic",         "bic",         "r",          "s",          "se_alpha",
    "se_beta",     "alpha_lower", "alpha_upper", "beta_lower", "beta_upper",
    "level",       "message"};

std::vector<double*> numeric_fields(FitReportRow& r) {
  return {&r.alpha,       &r.beta,        &r.loglik,     &r.aic,
          &r.bic,         &r.r,           &r.s,          &r.se_alpha,
          &r.se_beta,     &r.alpha_lower, &r.alpha_upper, &r.beta_lower,
          &r.beta_upper,  &r.level};
}
}  // namespace

void write_fit_report_csv(std::ostream& out, const FitReport& report) {
  for (std::size_t i = 0; i < std::size(kFitColumns); ++i) {
    out << (i ? "," : "") << kFitColumns[i];
  }
  out << '\n';
  for (FitReportRow row : report.rows) {
    out << csv_quote(row.estimator) << ',' << csv_quote(row.status);
    for (double* v : numeric_fields(row)) out << ',' << exact(*v);
    out << ',' << csv_quote(row.message) << '\n';
  }
}

void write_fit_report_json(std::ostream& out, const FitReport& report) {
  json rows = json::array();
  for (FitReportRow row : report.rows) {
    json j;
    j["estimator"] = row.estimator;
    j["status"] = row.status;
    const auto fields = numeric_fields(row);
    for (std::size_t k = 0; k < fields.size(); ++k) {
      j[kFitColumns[k + 2]] = number_or_null(*fields[k]);
    }
    j["message"] = row.message;
    rows.push_back(j);
  }
  out << json{{"command", "fit"},
              {"source", report.source},
              {"column", report.column},
              {"n", report.n},
              {"rows", rows}}
             .dump(2)
      << '\n';
}

FitReport read_fit_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");

  FitReport report;
  if (first != std::string::npos && text[first] == '{') {
    const json j = json::parse(text);
    report.source = j.at("source").get<std::string>();
    report.column = j.at("column").get<std::string>();
    report.n = j.at("n").get<std::size_t>();
    for (const auto& jr : j.at("rows")) {
      FitReportRow row;
      row.estimator = jr.at("estimator").get<std::string>();
      row.status = jr.at("status").get<std::string>();
      const auto fields = numeric_fields(row);
      for (std::size_t k = 0; k < fields.size(); ++k) {
        *fields[k] = from_json(jr.at(kFitColumns[k + 2]));
      }
      row.message = jr.at("message").get<std::string>();
      report.rows.push_back(row);
    }
    return report;
  }

  std::istringstream lines(text);
  std::string line;
  if (!std::getline(lines, line) ||
      csv_split(line).size() != std::size(kFitColumns)) {
    throw std::runtime_error("'" + path + "' is not a fit report");
  }
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const auto cells = csv_split(line);
    if (cells.size() != std::size(kFitColumns)) {
      throw std::runtime_error("malformed fit report row: " + line);
    }
    FitReportRow row;
    row.estimator = cells[0];
    row.status = cells[1];
    const auto fields = numeric_fields(row);
    for (std::size_t k = 0; k < fields.size(); ++k) {
      *fields[k] = parse_number(cells[k + 2]);
    }
    row.message = cells.back();
    report.rows.push_back(row);
  }
  return report;
}

// ---- entry point ----------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Closed-form estimators for beta and weighted exponential "
               "family distributions",
               "cfit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cf_version()));

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit beta models to a CSV column");
  fit_cmd->add_option("file", fit.file, "CSV file with a header row")->required();
  fit_cmd->add_option("--column", fit.column, "Column to read");
  fit_cmd->add_option("--estimators", fit.estimators,
                      "Comma-separated: ml,chen-xiao,tamae,proposed")
      ->capture_default_str();
  fit_cmd->add_option("--grid", fit.grid,
                      "rmin:rmax:step,smin:smax:step (default 0.1:2.5:0.1 on "
                      "both axes)");
  fit_cmd->add_option("--level", fit.level, "Wald interval level")
      ->capture_default_str();
  fit_cmd->add_option("-o,--output", fit.output, "Report file");
  fit_cmd->add_flag("--json", fit.json, "Write the report as JSON");
  fit_cmd->add_option("--seed", fit.seed, "Accepted for uniformity; fits are "
                                          "deterministic");

  SimulateOptions sim;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Monte Carlo comparison of estimators");
  sim_cmd->add_option("--scenarios", sim.scenarios,
                      "'all' or alpha:beta[,alpha:beta...]")
      ->capture_default_str();
  sim_cmd->add_option("--n", sim.sizes, "Comma-separated sample sizes")
      ->capture_default_str();
  sim_cmd->add_option("--reps", sim.reps, "Replications per scenario")
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  sim_cmd->add_option("--estimators", sim.estimators, "Estimators to compare")
      ->capture_default_str();
  sim_cmd->add_option("--grid", sim.grid, "Profile grid");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all)")
      ->capture_default_str();
  sim_cmd->add_option("-o,--output", sim.output, "Metrics file");
  sim_cmd->add_flag("--json", sim.json, "Write JSON instead of CSV");

  EnvelopeOptions env;
  auto* env_cmd = app.add_subcommand("envelope", "QQ envelope data");
  env_cmd->add_option("file", env.file, "CSV file")->required();
  env_cmd->add_option("--column", env.column, "Column to read");
  env_cmd->add_option("--sims", env.sims, "Simulated samples")
      ->capture_default_str();
  env_cmd->add_option("--method", env.method, "Estimator used for the fit")
      ->capture_default_str();
  env_cmd->add_option("--params", env.params,
                      "alpha,beta to use instead of fitting");
  env_cmd->add_option("--grid", env.grid, "Profile grid for --method proposed");
  env_cmd->add_option("--coverage", env.coverage, "Pointwise band coverage")
      ->capture_default_str();
  env_cmd->add_option("--seed", env.seed, "Master seed")->capture_default_str();
  env_cmd->add_option("-o,--output", env.output, "Envelope file");
  env_cmd->add_flag("--json", env.json, "Write JSON instead of CSV");

  WeightedOptions wo;
  auto* w_cmd = app.add_subcommand("fit-weighted",
                                   "Fit a weighted exponential family model");
  w_cmd->add_option("file", wo.file, "CSV file with positive values")->required();
  w_cmd->add_option("--column", wo.column, "Column to read");
  w_cmd->add_option("--generator", wo.generator,
                    "gamma, nakagami, weighted-lindley or inverse")
      ->required();
  w_cmd->add_flag("--kronecker", wo.kronecker, "Use the a = b branch");
  w_cmd->add_option("--r", wo.r, "Use the exp(r x) - 1 transform with this r");
  w_cmd->add_option("-o,--output", wo.output, "Report file");
  w_cmd->add_flag("--json", wo.json, "Write JSON instead of CSV");
  w_cmd->add_option("--seed", wo.seed, "Accepted for uniformity");

  FreqOptions fo;
  auto* f_cmd = app.add_subcommand("profile-freq",
                                   "Profile (r, s) selection frequencies");
  f_cmd->add_option("--scenarios", fo.scenarios,
                    "'all' or alpha:beta[,alpha:beta...]")
      ->capture_default_str();
  f_cmd->add_option("--n", fo.n, "Sample size")->capture_default_str();
  f_cmd->add_option("--reps", fo.reps, "Replications")->capture_default_str();
  f_cmd->add_option("--seed", fo.seed, "Master seed")->capture_default_str();
  f_cmd->add_option("--grid", fo.grid, "Profile grid");
  f_cmd->add_option("--threads", fo.threads, "Worker threads (0 = all)")
      ->capture_default_str();
  f_cmd->add_option("--top", fo.top, "Grid points listed per scenario")
      ->capture_default_str();
  f_cmd->add_option("-o,--output", fo.output, "Frequency file");
  f_cmd->add_flag("--json", fo.json, "Write JSON instead of CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(fit, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out);
    if (env_cmd->parsed()) return cmd_envelope(env, out);
    if (w_cmd->parsed()) return cmd_fit_weighted(wo, out);
    if (f_cmd->parsed()) return cmd_profile_freq(fo, out);
  } catch (const UsageError& e) {
    err << "cfit: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "cfit: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace closedfit::cli
