// Copyright 2026 The hlav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hlav/averages.hpp"
#include "hlav/error.hpp"
#include "oracles.hpp"

namespace hlav {
namespace {

const PrimeBitmap& big() {
  static const PrimeBitmap pb = build_sieve(1'200'000);
  return pb;
}

const std::vector<char>& small_table() {
  static const std::vector<char> t = oracle::prime_table(20'000);
  return t;
}

double density(double x) { return x / (std::log(x) * std::log(x)); }

TEST(ShiftSet, Validation) {
  EXPECT_EQ(ShiftSet({4, 2}).to_string(), "2,4");
  EXPECT_THROW(ShiftSet({}), PreconditionError);
  EXPECT_THROW(ShiftSet({0, 3}), PreconditionError);
  EXPECT_THROW(ShiftSet({3, 3}), PreconditionError);
}

TEST(LongAverage, SmallExample) {
  EXPECT_EQ(long_average_length(10'000, 0.62), 301u);
  const auto r = verify_long_average(big(), 10'000, 0.62);
  EXPECT_EQ(r.statement_id, StatementId::kThm1Long);
  EXPECT_EQ(r.params.number("M"), 301.0);
  EXPECT_EQ(r.params.number("shift_terms"), 150.0);
  std::uint64_t sum = 0;
  for (std::uint64_t k = 1; 2 * k <= 301; ++k) {
    sum += oracle::pair_count(small_table(), 0, 10'000, 2 * k);
  }
  EXPECT_EQ(r.params.number("pair_sum"), static_cast<double>(sum));
  EXPECT_DOUBLE_EQ(r.lhs, 2.0 * static_cast<double>(sum) / 301.0);
  EXPECT_DOUBLE_EQ(r.rhs, 2.0 * density(1e4));
  EXPECT_NEAR(r.ratio, 1.26972, 1e-5);
  EXPECT_FALSE(r.pass);  // outside the default band at this size
}

TEST(LongAverage, Degenerate) {
  EXPECT_THROW(verify_long_average(big(), 10, 0.1), PreconditionError);
  EXPECT_THROW(verify_long_average(big(), 10'000, 1.0), PreconditionError);
  EXPECT_THROW(verify_long_average(build_sieve(10'100), 10'000, 0.62),
               PreconditionError);
}

TEST(LongAverage, RatioTrendsTowardOne) {
  const auto r4 = verify_long_average(big(), 10'000, 0.62);
  const auto r6 = verify_long_average(big(), 1'000'000, 0.62);
  EXPECT_LT(std::abs(r6.ratio - 1.0), std::abs(r4.ratio - 1.0));
  EXPECT_NEAR(r6.ratio, 1.18205, 1e-5);
  EXPECT_TRUE(r6.pass);
}

TEST(WindowAverage, Examples) {
  const auto r = verify_window_average(big(), 1'000'000, 100'000, 0.62);
  EXPECT_EQ(r.statement_id, StatementId::kThm1Window);
  EXPECT_TRUE(std::isfinite(r.ratio));
  EXPECT_GT(r.lhs, 0.0);
  const auto small = verify_window_average(big(), 10'000, 10'000, 0.62);
  EXPECT_TRUE(std::isfinite(small.ratio));
  const auto w = verify_window_average(big(), 10'000, 9'000, 0.62);
  std::uint64_t sum = 0;
  for (std::uint64_t k = 1; 2 * k <= 301; ++k) {
    sum += oracle::pair_count(small_table(), 10'000, 19'000, 2 * k);
  }
  EXPECT_EQ(w.params.number("pair_sum"), static_cast<double>(sum));
  const double l = std::log(1e4);
  EXPECT_DOUBLE_EQ(w.rhs, 2.0 * 9'000.0 / (l * l));
  EXPECT_THROW(verify_window_average(big(), 1'000'000, 100, 0.62), PreconditionError);
  EXPECT_THROW(verify_window_average(big(), 10'000, 10'001, 0.62), PreconditionError);
}

TEST(WeightedShort, MatchesNaiveSum) {
  for (std::uint64_t F : {1u, 2u, 5u, 13u, 40u}) {
    std::uint64_t sum = 0;
    for (std::uint64_t k = 1; k <= F; ++k) {
      sum += (F - k) * oracle::pair_count(small_table(), 0, 10'000, 2 * k);
    }
    EXPECT_DOUBLE_EQ(weighted_short_sum(big(), 10'000, F),
                     static_cast<double>(sum) / static_cast<double>(F * F));
  }
}

TEST(WeightedShort, MillionExample) {
  const double x = 1e6;
  const auto r = verify_weighted_short(big(), 1'000'000, 1.0, std::log(x));
  EXPECT_EQ(r.statement_id, StatementId::kThm2Weighted);
  EXPECT_EQ(r.params.number("floor_E"), 13.0);
  EXPECT_NEAR(r.rhs, 0.5 * density(x), 1e-9);
  EXPECT_NEAR(r.rhs, 2619.607, 1e-3);
  EXPECT_NEAR(r.lhs, 5097.5799, 1e-3);
  EXPECT_GT(r.margin, 0.0);
  EXPECT_TRUE(r.pass);

  const auto r6 = verify_weighted_short(big(), 1'000'000, 0.6, 0.6 * std::log(x));
  EXPECT_EQ(r6.params.number("floor_E"), 8.0);
}

TEST(WeightedShort, UnitFloorGivesZero) {
  // ln 20 ~ 3.0, so C = 0.6 allows E = 1.9 and floor(E) = 1.
  const auto w = verify_weighted_short(big(), 20, 0.6, 1.9);
  EXPECT_EQ(w.lhs, 0.0);
  const auto u = verify_unweighted_short(big(), 20, 0.6, 1.9);
  EXPECT_EQ(u.lhs, 4.0);  // 3, 5, 11, 17
  const auto k2 = verify_ktuple_weighted(big(), 20, 0.6, 1.9, 2);
  EXPECT_EQ(k2.lhs, 0.0);
}

TEST(WeightedShort, Preconditions) {
  EXPECT_THROW(verify_weighted_short(big(), 1'000'000, 0.5, 100.0), PreconditionError);
  EXPECT_THROW(verify_weighted_short(big(), 1'000'000, 1.0, 10.0), PreconditionError);
  EXPECT_THROW(verify_weighted_short(big(), 1'000'000, 1.0, 1e6), PreconditionError);
  EXPECT_THROW(verify_weighted_short(build_sieve(1'000'010), 1'000'000, 1.0, 14.0),
               PreconditionError);
  EXPECT_THROW(verify_ktuple_weighted(big(), 1'000'000, 1.0, 14.0, 3), UnsupportedError);
}

TEST(UnweightedShort, DominatesWeighted) {
  for (std::uint64_t x : {1'000u, 10'000u, 100'000u, 1'000'000u}) {
    const double E = 1.5 * std::log(static_cast<double>(x));
    const auto w = verify_weighted_short(big(), x, 1.0, E);
    const auto u = verify_unweighted_short(big(), x, 1.0, E);
    EXPECT_GE(u.lhs, w.lhs);
    EXPECT_EQ(u.rhs, w.rhs);
    EXPECT_EQ(u.statement_id, StatementId::kCor2Unweighted);
  }
}

TEST(KTuple, MatchesNaiveWeightedSum) {
  const std::uint64_t x = 10'000;
  const double E = 10.5;
  const auto r = verify_ktuple_weighted(big(), x, 1.0, E, 2);
  const std::uint64_t F = 10;
  std::uint64_t sum = 0;
  for (std::uint64_t a = 1; a <= F; ++a) {
    for (std::uint64_t b = 1; b <= F; ++b) {
      std::vector<std::uint64_t> s = a == b ? std::vector<std::uint64_t>{2 * a}
                                            : std::vector<std::uint64_t>{2 * a, 2 * b};
      sum += (F - std::max(a, b)) * oracle::tuple_count(small_table(), x, s);
    }
  }
  EXPECT_EQ(r.params.number("weighted_tuple_sum"), static_cast<double>(sum));
  EXPECT_DOUBLE_EQ(r.lhs, 3.0 * static_cast<double>(sum) / 4000.0);
  const double l = std::log(1e4);
  EXPECT_DOUBLE_EQ(r.rhs, 0.75 * 1e4 / (l * l * l));
}

TEST(Stride, MillionExample) {
  const auto r = verify_stride(big(), 1'000'000, 5, 1'000);
  EXPECT_EQ(r.statement_id, StatementId::kThm4Stride);
  EXPECT_EQ(r.params.number("M"), 100.0);
  EXPECT_NEAR(r.lhs, 15098.057, 1e-3);
  EXPECT_GT(r.lhs, 0.5 * density(1e6));
  EXPECT_NEAR(*r.params.number("cor3_lhs"), 15362.32, 1e-2);
  EXPECT_THROW(verify_stride(big(), 1'000'000, 300, 1'000), PreconditionError);
  EXPECT_THROW(verify_stride(big(), 1'000'000, 0, 1'000), PreconditionError);
}

TEST(Stride, UnitStepIsWeightedShortSum) {
  for (std::uint64_t h : {60u, 100u, 500u}) {
    const auto r = verify_stride(big(), 100'000, 1, h);
    const std::uint64_t M = h / 2;
    EXPECT_DOUBLE_EQ(r.lhs, 2.0 * weighted_short_sum(big(), 100'000, M));
  }
}

TEST(Lemma1, TwoShiftExample) {
  const ShiftSet B({2, 4});
  const auto id = coincidence_identity(big(), 100, B);
  EXPECT_EQ(id.off_diagonal, 18u);
  EXPECT_TRUE(id.holds());
  const auto r = lemma1_margin(big(), 100, B);
  EXPECT_EQ(r.lhs, 4.5);
  EXPECT_EQ(r.params.number("identity_holds"), 1.0);
  EXPECT_TRUE(coincidence_identity(big(), 50, ShiftSet({1, 2, 3})).holds());
  EXPECT_THROW(lemma1_margin(big(), 100, ShiftSet({2, 10})), PreconditionError);
}

TEST(Lemma1, IdentityHoldsOnRandomInstances) {
  const auto& t = small_table();
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint64_t x = oracle::uniform(1, 10'000);
    std::vector<std::uint64_t> raw;
    const auto size = oracle::uniform(1, 20);
    while (raw.size() < size) {
      const auto a = oracle::uniform(1, 500);
      if (std::find(raw.begin(), raw.end(), a) == raw.end()) raw.push_back(a);
    }
    const ShiftSet B(raw);
    const auto id = coincidence_identity(big(), x, B);
    std::uint64_t square = 0;
    std::uint64_t pairs = 0;
    for (std::uint64_t n = 1; n <= x; ++n) {
      std::uint64_t s = 0;
      for (const auto a : raw) s += t[n + a];
      square += s * s;
    }
    for (const auto a : raw) {
      for (const auto b : raw) {
        for (std::uint64_t n = 1; n <= x; ++n) pairs += t[n + a] && t[n + b];
      }
    }
    ASSERT_EQ(id.square_sum, square);
    ASSERT_EQ(id.pair_sum(), pairs);
    ASSERT_TRUE(id.holds());
  }
}

TEST(Lemma1, ArithmeticSetReproducesWeightedSum) {
  const std::uint64_t x = 1'000'000;
  const std::uint64_t F = 13;
  std::vector<std::uint64_t> raw;
  for (std::uint64_t a = 1; a <= 2 * F; ++a) raw.push_back(a);
  const auto r = lemma1_margin(big(), x, ShiftSet(raw));
  const double shift_form = *r.params.number("shift_form_lhs");
  const double bound = *r.params.number("boundary_correction_bound");
  EXPECT_LE(std::abs(r.lhs - shift_form), bound);
  // odd differences only see p = 2
  EXPECT_LE(std::abs(shift_form - weighted_short_sum(big(), x, F)), 0.5);
}

TEST(Lemma2, ConstantFunction) {
  const auto r = lemma2_margin(ArithmeticFunction::constant(1.0, 200), 100,
                               ShiftSet({1, 2}));
  EXPECT_EQ(r.lhs, 50.0);
  EXPECT_EQ(r.rhs, 50.0);
  EXPECT_EQ(r.margin, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(Lemma2, Alternating) {
  const auto r = lemma2_margin(ArithmeticFunction::alternating(200), 100,
                               ShiftSet({1, 2}));
  EXPECT_EQ(r.rhs, -50.0);
  EXPECT_EQ(r.lhs, 50.0);
  EXPECT_TRUE(r.pass);
}

TEST(Lemma2, PrimeIndicatorMatchesLemma1) {
  const ShiftSet B({2, 4});
  const std::uint64_t x = 10'000;
  const auto l2 = lemma2_margin(ArithmeticFunction::prime_indicator(big()), x, B);
  const auto l1 = lemma1_margin(big(), x, B);
  EXPECT_EQ(l2.lhs, l1.lhs);
  const double pi = 1229.0;
  EXPECT_DOUBLE_EQ(l2.rhs, pi * pi / 1e4 - pi / 2.0);
  EXPECT_THROW(lemma2_margin(ArithmeticFunction::constant(1.0, 10), 9, B),
               PreconditionError);
}

TEST(Scan, ThreePoints) {
  const std::uint64_t grid[] = {1'000'000, 10'000, 100'000, 10'000};
  const auto reports = conjecture2_scan(big(), grid, "log2");
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_EQ(reports[0].x, 10'000u);
  EXPECT_EQ(reports[1].x, 100'000u);
  EXPECT_EQ(reports[2].x, 1'000'000u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.statement_id, StatementId::kConj2Point);
    EXPECT_TRUE(r.pass);
    const double l = std::log(static_cast<double>(r.x));
    EXPECT_EQ(r.params.number("floor_E"), std::floor(l * l));
  }
  EXPECT_TRUE(conjecture2_scan(big(), {}, "log2").empty());
  EXPECT_THROW(conjecture2_scan(big(), grid, "cubic"), PreconditionError);
}

TEST(Scan, LengthRules) {
  const double l = std::log(1e6);
  EXPECT_DOUBLE_EQ(scan_length("log2", 1'000'000), l * l);
  EXPECT_DOUBLE_EQ(scan_length("sqrtlog", 1'000'000), l * std::sqrt(l));
  EXPECT_DOUBLE_EQ(scan_length("2.5", 1'000'000), 2.5 * l);
  EXPECT_THROW(scan_length("-1", 1'000'000), PreconditionError);
}

TEST(Reports, RatioTimesRhsRecoversLhs) {
  const auto check = [](const VerificationReport& r) {
    const double back = r.ratio * r.rhs;
    const double ulp = std::nextafter(std::abs(r.lhs), INFINITY) - std::abs(r.lhs);
    EXPECT_LE(std::abs(back - r.lhs), ulp) << to_string(r.statement_id);
    EXPECT_EQ(r.margin, r.lhs - r.rhs);
  };
  check(verify_long_average(big(), 1'000'000, 0.62));
  check(verify_weighted_short(big(), 1'000'000, 1.0, std::log(1e6)));
  check(verify_unweighted_short(big(), 1'000'000, 1.0, std::log(1e6)));
  check(verify_stride(big(), 1'000'000, 5, 1'000));
  check(lemma1_margin(big(), 10'000, ShiftSet({2, 4, 6})));
}

TEST(Reports, IndependentOfSegmentSize) {
  SieveConfig cfg;
  cfg.segment_size = 64 * 17;
  cfg.parallelism = 3;
  const auto other = build_sieve(1'200'000, cfg);
  const auto a = verify_weighted_short(big(), 1'000'000, 1.0, std::log(1e6));
  const auto b = verify_weighted_short(other, 1'000'000, 1.0, std::log(1e6));
  EXPECT_EQ(a.lhs, b.lhs);
  EXPECT_EQ(verify_long_average(big(), 1'000'000, 0.62).lhs,
            verify_long_average(other, 1'000'000, 0.62).lhs);
}

}  // namespace
}  // namespace hlav
