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

#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "closedfit/estimators.hpp"
#include "closedfit/model.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using closedfit::cli::FitReport;
using closedfit::cli::FitReportRow;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome cfit(std::vector<std::string> args) {
  args.insert(args.begin(), "cfit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = closedfit::cli::run(static_cast<int>(argv.size()), argv.data(), out,
                               err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("cfit_") + info->name() + "_" +
            std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream f(path(name), std::ios::binary);
    f << content;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  static std::string roraima() {
    return closedfit::testing::data_path("roraima_farming_2023.csv");
  }

  fs::path dir_;
};

void expect_same(double a, double b) {
  if (std::isnan(a)) {
    EXPECT_TRUE(std::isnan(b));
  } else {
    EXPECT_EQ(a, b);
  }
}

void expect_same_rows(const FitReportRow& a, const FitReportRow& b) {
  EXPECT_EQ(a.estimator, b.estimator);
  EXPECT_EQ(a.status, b.status);
  expect_same(a.alpha, b.alpha);
  expect_same(a.beta, b.beta);
  expect_same(a.loglik, b.loglik);
  expect_same(a.aic, b.aic);
  expect_same(a.bic, b.bic);
  expect_same(a.r, b.r);
  expect_same(a.s, b.s);
  expect_same(a.se_alpha, b.se_alpha);
  expect_same(a.se_beta, b.se_beta);
  expect_same(a.alpha_lower, b.alpha_lower);
  expect_same(a.alpha_upper, b.alpha_upper);
  expect_same(a.beta_lower, b.beta_lower);
  expect_same(a.beta_upper, b.beta_upper);
  expect_same(a.level, b.level);
  EXPECT_EQ(a.message, b.message);
}

TEST_F(CliTest, FitReportRoundTripsThroughBothFormats) {
  const auto csv = path("fit.csv");
  const auto js = path("fit.json");
  ASSERT_EQ(cfit({"fit", roraima(), "-o", csv}).code, 0);
  ASSERT_EQ(cfit({"fit", roraima(), "-o", js, "--json"}).code, 0);
  const FitReport a = closedfit::cli::read_fit_report(csv);
  const FitReport b = closedfit::cli::read_fit_report(js);
  ASSERT_EQ(a.rows.size(), 4u);
  ASSERT_EQ(b.rows.size(), 4u);
  EXPECT_EQ(b.n, 15u);
  EXPECT_EQ(b.column, "prop_farming");
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    expect_same_rows(a.rows[i], b.rows[i]);
  }

  // The written numbers are the library's, not rounded copies.
  const auto sample =
      closedfit::Sample::unit(closedfit::testing::roraima_values());
  const auto ml = closedfit::fit_beta(sample, closedfit::BetaMethod::kMl);
  const auto& ml_params = std::get<closedfit::BetaParams>(ml.params);
  EXPECT_EQ(a.rows[0].estimator, "ml");
  EXPECT_EQ(a.rows[0].alpha, ml_params.alpha);
  EXPECT_EQ(a.rows[0].beta, ml_params.beta);
  EXPECT_TRUE(std::isnan(a.rows[0].r));
  EXPECT_EQ(a.rows[3].estimator, "proposed");
  EXPECT_DOUBLE_EQ(a.rows[3].r, 1.0);
  EXPECT_DOUBLE_EQ(a.rows[3].s, 1.2);
}

TEST_F(CliTest, ReportWritersPreserveAwkwardValues) {
  FitReport report;
  report.source = "a \"quoted\", path";
  report.column = "x";
  report.n = 3;
  FitReportRow ok;
  ok.estimator = "ml";
  ok.status = "ok";
  ok.alpha = 0.1;
  ok.beta = 1.0 / 3.0;
  ok.loglik = -1e-300;
  ok.aic = 5e300;
  ok.bic = std::nextafter(1.0, 2.0);
  ok.r = std::numeric_limits<double>::quiet_NaN();
  ok.s = std::numeric_limits<double>::quiet_NaN();
  ok.level = 0.95;
  FitReportRow bad;
  bad.estimator = "tamae";
  bad.status = "degenerate";
  bad.alpha = bad.beta = std::numeric_limits<double>::quiet_NaN();
  bad.message = "linear system is singular, \"det\" = 0";
  report.rows = {ok, bad};

  for (const bool use_json : {false, true}) {
    const auto p = path(use_json ? "r.json" : "r.csv");
    {
      std::ofstream f(p);
      if (use_json) {
        closedfit::cli::write_fit_report_json(f, report);
      } else {
        closedfit::cli::write_fit_report_csv(f, report);
      }
    }
    const FitReport back = closedfit::cli::read_fit_report(p);
    ASSERT_EQ(back.rows.size(), 2u);
    expect_same_rows(back.rows[0], ok);
    expect_same_rows(back.rows[1], bad);
    if (use_json) {
      EXPECT_EQ(back.source, report.source);
      EXPECT_EQ(back.n, 3u);
    }
  }
}

TEST_F(CliTest, TableUsesFourDecimals) {
  const auto o = cfit({"fit", roraima()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("1.2917"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("(1, 1.2)"), std::string::npos);
  const std::regex number(R"(-?\d+\.\d+)");
  std::istringstream lines(o.out);
  std::string line;
  int checked = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("ML ", 0) != 0) continue;
    for (std::sregex_iterator it(line.begin(), line.end(), number), end;
         it != end; ++it) {
      const std::string v = it->str();
      EXPECT_EQ(v.size() - v.find('.') - 1, 4u) << v;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 7);
}

TEST_F(CliTest, ValueOnBoundaryNamesTheLine) {
  const auto f = write("bad.csv", "x\n0.2\n1.0\n0.4\n");
  const auto o = cfit({"fit", f});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("line 3"), std::string::npos) << o.err;
  EXPECT_NE(o.err.find("1.0"), std::string::npos) << o.err;
}

TEST_F(CliTest, EmptyFileIsARuntimeFailure) {
  const auto f = write("empty.csv", "x\n");
  const auto o = cfit({"fit", f});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("no observations"), std::string::npos) << o.err;
  EXPECT_EQ(cfit({"fit", path("missing.csv")}).code, 1);
}

TEST_F(CliTest, UsageErrorsExitWithTwo) {
  const auto f = write("pos.csv", "x\n1.5\n2\n0.7\n");
  const auto o = cfit({"fit-weighted", f, "--generator", "foo"});
  EXPECT_EQ(o.code, 2);
  for (const char* g : {"gamma", "nakagami", "weighted-lindley", "inverse"}) {
    EXPECT_NE(o.err.find(g), std::string::npos) << o.err;
  }
  EXPECT_EQ(cfit({}).code, 2);
  EXPECT_EQ(cfit({"bogus"}).code, 2);
  EXPECT_EQ(cfit({"fit"}).code, 2);
  EXPECT_EQ(cfit({"fit", roraima(), "--estimators", "nope"}).code, 2);
  EXPECT_EQ(cfit({"simulate", "--reps", "0"}).code, 2);
  EXPECT_EQ(cfit({"simulate", "--scenarios", "1"}).code, 2);
  EXPECT_EQ(cfit({"fit", roraima(), "--grid", "1:0:0.1,1:2:0.1"}).code, 2);
  EXPECT_EQ(cfit({"--help"}).code, 0);
}

TEST_F(CliTest, FitWeightedReportsFiniteParameters) {
  const auto f = write("pos.csv", "x\n1.5\n2\n0.7\n3.1\n0.4\n2.2\n");
  const auto js = path("w.json");
  const auto o = cfit({"fit-weighted", f, "--generator", "gamma", "-o", js, "--json"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto doc = nlohmann::json::parse(slurp(js));
  EXPECT_EQ(doc["generator"], "gamma");
  EXPECT_TRUE(doc["r"].is_null());
  EXPECT_GT(doc["sigma"].get<double>(), 0.0);
  EXPECT_TRUE(std::isfinite(doc["mu"].get<double>()));
}

TEST_F(CliTest, SimulateIsDeterministicAndThreadIndependent) {
  const std::vector<std::string> base = {"simulate", "--scenarios", "1:1,0.5:2",
                                         "--n",      "10,20",       "--reps",
                                         "50"};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  };
  ASSERT_EQ(cfit(with({"-o", path("a.csv"), "--seed", "11"})).code, 0);
  ASSERT_EQ(cfit(with({"-o", path("b.csv"), "--seed", "11"})).code, 0);
  ASSERT_EQ(cfit(with({"-o", path("c.csv"), "--seed", "11", "--threads", "3"})).code, 0);
  const auto a = slurp(path("a.csv"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(path("b.csv")));
  EXPECT_EQ(a, slurp(path("c.csv")));
  // Header plus 2 scenarios x 2 sizes x 4 estimators.
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 17);

  ASSERT_EQ(cfit(with({"-o", path("d.csv"), "--seed", "12"})).code, 0);
  EXPECT_NE(a, slurp(path("d.csv")));
}

TEST_F(CliTest, SimulateMetricsHaveFourDecimals) {
  ASSERT_EQ(cfit({"simulate", "--scenarios", "2:2", "--n", "30", "--reps", "40",
                  "-o", path("m.csv")})
                .code,
            0);
  std::istringstream lines(slurp(path("m.csv")));
  std::string line;
  std::getline(lines, line);
  const std::regex row(
      R"(^2,2,30,40,1,[a-z-]+(,\d+\.\d{4}){6},\d+,\d+$)");
  int rows = 0;
  while (std::getline(lines, line)) {
    EXPECT_TRUE(std::regex_match(line, row)) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 4);
}

TEST_F(CliTest, SingleReplicationHasZeroStandardError) {
  const auto js = path("one.json");
  ASSERT_EQ(cfit({"simulate", "--scenarios", "1:1", "--n", "10", "--reps", "1",
                  "-o", js, "--json"})
                .code,
            0);
  const auto doc = nlohmann::json::parse(slurp(js));
  ASSERT_EQ(doc["rows"].size(), 4u);
  for (const auto& r : doc["rows"]) {
    EXPECT_EQ(r["replications"], 1);
    if (r["successes"] == 1) {
      EXPECT_EQ(r["se_alpha"].get<double>(), 0.0);
      EXPECT_EQ(r["se_beta"].get<double>(), 0.0);
      EXPECT_EQ(r["mare_alpha"].get<double>() * 1.0,
                r["rmse_alpha"].get<double>());
    }
  }
}

TEST_F(CliTest, EnvelopeIsSeededAndCoversRoraima) {
  const auto a = path("a.csv");
  const auto b = path("b.csv");
  const auto c = path("c.csv");
  const auto o = cfit({"envelope", roraima(), "--sims", "400", "--seed", "3", "-o", a});
  ASSERT_EQ(o.code, 0) << o.err;
  ASSERT_EQ(cfit({"envelope", roraima(), "--sims", "400", "--seed", "3", "-o", b}).code, 0);
  ASSERT_EQ(cfit({"envelope", roraima(), "--sims", "400", "--seed", "4", "-o", c}).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a), slurp(c));
  const std::regex inside(R"((\d+) of 15 points inside the band)");
  std::smatch m;
  ASSERT_TRUE(std::regex_search(o.out, m, inside)) << o.out;
  EXPECT_GE(std::stoi(m[1]), 13);

  const auto single = write("one.csv", "x\n0.3\n");
  EXPECT_EQ(cfit({"envelope", single, "--params", "2,3", "--sims", "50"}).code, 0);
  EXPECT_EQ(cfit({"envelope", single, "--sims", "50"}).code, 1);
}

TEST_F(CliTest, ProfileFrequenciesCountEveryReplication) {
  const auto js = path("f.json");
  ASSERT_EQ(cfit({"profile-freq", "--scenarios", "1:1", "--n", "50", "--reps",
                  "60", "-o", js, "--json"})
                .code,
            0);
  const auto doc = nlohmann::json::parse(slurp(js));
  ASSERT_EQ(doc["scenarios"].size(), 1u);
  const auto& sc = doc["scenarios"][0];
  std::size_t total = 0;
  for (const auto& c : sc["counts"]) total += c["count"].get<std::size_t>();
  EXPECT_EQ(total, sc["successes"].get<std::size_t>());
  EXPECT_EQ(total + sc["failures"].get<std::size_t>(), 60u);
}

}  // namespace
