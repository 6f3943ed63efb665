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

#include <gtest/gtest.h>

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "closedfit/dataset.hpp"
#include "closedfit/envelope.hpp"
#include "closedfit/error.hpp"
#include "closedfit/estimators.hpp"
#include "oracles.hpp"

namespace closedfit {
namespace {

Dataset parse(const std::string& text, Support support = Support::kUnitInterval,
              std::optional<std::string> column = std::nullopt) {
  std::istringstream in(text);
  return parse_dataset(in, "mem.csv", support, column);
}

std::optional<ErrorCode> parse_error(const std::string& text, std::string* message,
                      Support support = Support::kUnitInterval,
                      std::optional<std::string> column = std::nullopt) {
  try {
    parse(text, support, std::move(column));
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  return std::nullopt;
}

// ---- dataset ---------------------------------------------------------------

TEST(Dataset, BundledRoraimaFile) {
  const auto d = load_dataset(testing::data_path("roraima_farming_2023.csv"),
                              Support::kUnitInterval);
  EXPECT_EQ(d.column, "prop_farming");
  EXPECT_EQ(d.sample.size(), 15u);
  EXPECT_EQ(std::vector<double>(d.sample.values().begin(), d.sample.values().end()),
            testing::roraima_values());
}

TEST(Dataset, Layouts) {
  const auto headerless = parse("0.2\n0.5\n\n0.7\n");
  EXPECT_EQ(headerless.sample.size(), 3u);
  EXPECT_EQ(headerless.column, "value");

  const auto named = parse("\xEF\xBB\xBFp\r\n0.25\r\n0.75\r\n");
  EXPECT_EQ(named.column, "p");
  EXPECT_EQ(named.sample[1], 0.75);

  const auto quoted = parse("name,share\n\"Boa Vista, RR\",0.1\nCaracarai,\"0.3\"\n");
  EXPECT_EQ(quoted.column, "share");
  EXPECT_EQ(quoted.sample[0], 0.1);
  EXPECT_EQ(quoted.sample[1], 0.3);

  const auto chosen = parse("a,b\n0.1,0.6\n0.2,0.7\n", Support::kUnitInterval, "b");
  EXPECT_EQ(chosen.sample[0], 0.6);
  const auto first_numeric = parse("a,b\n0.1,0.6\n0.2,0.7\n");
  EXPECT_EQ(first_numeric.column, "a");

  const auto positive = parse("x\n2.5\n13\n", Support::kPositive);
  EXPECT_EQ(positive.sample[1], 13.0);
  EXPECT_EQ(positive.source, "mem.csv");
}

TEST(Dataset, Diagnostics) {
  std::string msg;
  EXPECT_EQ(parse_error("p\n0.2\n1.0\n", &msg), ErrorCode::kDomain);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("(0, 1)"), std::string::npos) << msg;

  EXPECT_EQ(parse_error("", &msg), ErrorCode::kInvalidArgument);
  EXPECT_NE(msg.find("no observations"), std::string::npos);
  EXPECT_EQ(parse_error("p\n\n", &msg), ErrorCode::kInvalidArgument);
  EXPECT_NE(msg.find("no observations"), std::string::npos);

  EXPECT_EQ(parse_error("p\n0.2\nabc\n", &msg), ErrorCode::kParse);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_EQ(parse_error("x\n-1\n", &msg, Support::kPositive), ErrorCode::kDomain);
  EXPECT_EQ(parse_error("x\n0\n", &msg, Support::kPositive), ErrorCode::kDomain);
  EXPECT_EQ(parse_error("a,b\n0.1,0.2\n", &msg, Support::kUnitInterval, "c"),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(parse_error("a,b\nx,y\n", &msg), ErrorCode::kParse);

  try {
    load_dataset("/nonexistent/file.csv", Support::kUnitInterval);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

// ---- envelope --------------------------------------------------------------

TEST(QuantileSorted, TypeSevenInterpolation) {
  const std::vector<double> v{1, 2, 3, 4};
  EXPECT_EQ(quantile_sorted(v, 0.0), 1.0);
  EXPECT_EQ(quantile_sorted(v, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.25), 1.75);
  const std::vector<double> one{7};
  EXPECT_EQ(quantile_sorted(one, 0.3), 7.0);
  EXPECT_THROW(quantile_sorted(std::vector<double>{}, 0.5), Error);
  EXPECT_THROW(quantile_sorted(v, 1.5), Error);
}

TEST(Envelope, RoraimaPointsSitInsideTheBand) {
  const auto s = Sample::unit(testing::roraima_values());
  const auto fit = fit_ml(s);
  const auto rows = compute_envelope(s, fit.beta_params());
  ASSERT_EQ(rows.size(), 15u);
  int inside = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].rank, i + 1);
    EXPECT_LE(rows[i].lower, rows[i].theoretical);
    EXPECT_LE(rows[i].theoretical, rows[i].upper);
    if (i > 0) {
      EXPECT_GE(rows[i].observed, rows[i - 1].observed);
      EXPECT_GE(rows[i].theoretical, rows[i - 1].theoretical);
    }
    if (rows[i].lower <= rows[i].observed && rows[i].observed <= rows[i].upper) {
      ++inside;
    }
  }
  EXPECT_GE(inside, 13);
}

TEST(Envelope, CalibratedUnderTheModel) {
  const BetaParams model{1.5, 3.0};
  RngStream rng(71);
  std::size_t outside = 0;
  std::size_t total = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto s = beta_sample(model, 20, rng);
    const auto rows = compute_envelope(s, model, {500, 1000 + static_cast<std::uint64_t>(rep), 0.95});
    for (const auto& row : rows) {
      if (row.observed < row.lower || row.observed > row.upper) ++outside;
      ++total;
    }
  }
  const double rate = static_cast<double>(outside) / static_cast<double>(total);
  EXPECT_GT(rate, 0.03);
  EXPECT_LT(rate, 0.08);
}

TEST(Envelope, SeedsAndEdgeCases) {
  const auto s = Sample::unit({0.2, 0.4, 0.9});
  const auto a = compute_envelope(s, {2, 2}, {200, 5, 0.9});
  const auto b = compute_envelope(s, {2, 2}, {200, 5, 0.9});
  const auto c = compute_envelope(s, {2, 2}, {200, 6, 0.9});
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(a[i].lower, b[i].lower);
    EXPECT_EQ(a[i].upper, b[i].upper);
  }
  EXPECT_NE(a[1].lower, c[1].lower);
  const auto single = compute_envelope(Sample::unit({0.3}), {2, 2});
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].observed, 0.3);
  EXPECT_THROW(compute_envelope(s, {2, 2}, {1, 1, 0.95}), Error);
  EXPECT_THROW(compute_envelope(s, {2, 2}, {100, 1, 1.0}), Error);
  EXPECT_THROW(compute_envelope(Sample::positive({2.0}), {2, 2}), Error);
}

}  // namespace
}  // namespace closedfit
