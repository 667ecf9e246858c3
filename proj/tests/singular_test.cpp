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
#include <set>

#include "hlav/error.hpp"
#include "hlav/singular.hpp"
#include "oracles.hpp"

namespace hlav {
namespace {

constexpr double kTwinHalf = 0.6601618158468695739;

const SingularSeries& series_1e6() {
  static const SingularSeries s(1'000'000);
  return s;
}

TEST(TwinHalf, SmallBoundIsSingleFactor) {
  const auto v = twin_half_constant(3);
  EXPECT_DOUBLE_EQ(v.value, 0.75);
  EXPECT_FALSE(v.exactly_zero);
  EXPECT_EQ(v.prime_bound, 3u);
}

TEST(TwinHalf, ConvergesWithinTail) {
  const auto v6 = series_1e6().twin_half();
  EXPECT_LE(std::abs(v6.value - kTwinHalf), v6.tail_bound);
  EXPECT_NEAR(v6.value, 0.660161816, 1e-6);
  const auto v7 = twin_half_constant(10'000'000);
  EXPECT_LT(std::abs(v7.value - v6.value), 1e-6);
  EXPECT_LE(std::abs(v7.value - v6.value), v6.tail_bound);
}

TEST(TwinHalf, RejectsTinyBound) {
  EXPECT_THROW(twin_half_constant(2), PreconditionError);
}

TEST(PairConstant, Examples) {
  const auto& s = series_1e6();
  const double c2 = s.pair_constant(1).value;
  EXPECT_NEAR(c2, 2 * kTwinHalf, 2e-6);
  EXPECT_EQ(s.pair_constant(2).value, c2);
  EXPECT_EQ(s.pair_constant(8).value, c2);
  EXPECT_DOUBLE_EQ(s.pair_constant(3).value, 2 * c2);
  EXPECT_DOUBLE_EQ(s.pair_constant(15).value, c2 * 2.0 * 4.0 / 3.0);
  EXPECT_THROW(s.pair_constant(0), PreconditionError);
  EXPECT_THROW(pair_constant(7, 5), PreconditionError);
}

TEST(Nu, Examples) {
  const TupleSpec s({2, 6});
  EXPECT_EQ(nu(s, 2), 1u);
  EXPECT_EQ(nu(s, 3), 2u);
  EXPECT_EQ(nu(s, 5), 3u);
  EXPECT_EQ(nu(s, 7), 3u);
  EXPECT_EQ(nu(TupleSpec({2, 4}), 3), 3u);
  EXPECT_THROW(nu(s, 9), PreconditionError);
  EXPECT_THROW(nu(s, 1), PreconditionError);
}

TEST(PrimeFactors, Examples) {
  EXPECT_EQ(prime_factors(1), (std::vector<std::uint64_t>{}));
  EXPECT_EQ(prime_factors(360), (std::vector<std::uint64_t>{2, 3, 5}));
  EXPECT_EQ(prime_factors(97), (std::vector<std::uint64_t>{97}));
}

TEST(TupleConstant, InadmissibleIsExactlyZero) {
  const auto v = series_1e6().tuple_constant(TupleSpec({2, 4}));
  EXPECT_TRUE(v.exactly_zero);
  EXPECT_EQ(v.value, 0.0);
  EXPECT_FALSE(TupleConstantSpec(TupleSpec({2, 4})).admissible());
  EXPECT_TRUE(TupleConstantSpec(TupleSpec({2, 6})).admissible());
}

TEST(TupleConstant, SingleShiftMatchesPairConstant) {
  const auto& s = series_1e6();
  for (std::uint64_t k = 1; k <= 40; ++k) {
    const auto t = s.tuple_constant(TupleSpec({2 * k}));
    const auto p = s.pair_constant(k);
    EXPECT_LE(std::abs(t.value - p.value), t.tail_bound + p.tail_bound) << k;
  }
}

TEST(TupleConstant, PrimeTriple) {
  const auto v = series_1e6().tuple_constant(TupleSpec({2, 6}));
  EXPECT_NEAR(v.value, 2.858, 1e-3);
  EXPECT_FALSE(v.exactly_zero);
}

// Naive full Euler product at a smaller bound, every prime handled directly.
TEST(TupleConstant, MatchesNaiveProduct) {
  constexpr std::uint64_t kP = 20'000;
  const SingularSeries s(kP);
  const std::vector<std::vector<std::uint64_t>> cases = {
      {2}, {6}, {2, 6}, {4, 6}, {6, 12}, {2, 6, 8}, {4, 6, 10}, {30, 60}};
  for (const auto& c : cases) {
    const auto v = s.tuple_constant(TupleSpec(c));
    const double naive = oracle::euler_product(c, kP);
    EXPECT_NEAR(v.value, naive, 1e-11 * naive) << c.size() << " " << c.back();
  }
}

TEST(TupleConstant, Preconditions) {
  EXPECT_THROW(tuple_constant(TupleSpec({2, 6, 8, 12}), 3), PreconditionError);
  EXPECT_THROW(tuple_constant(TupleSpec({2, 2 * 101}), 50), PreconditionError);
}

TEST(TupleConstant, TailBoundIsHonest) {
  const std::pair<std::uint64_t, std::uint64_t> bounds[] = {{1'000, 10'000},
                                                            {100'000, 1'000'000}};
  for (const auto& [lo, hi] : bounds) {
    const SingularSeries small(lo);
    const SingularSeries big(hi);
    ASSERT_LE(std::abs(small.twin_half().value - big.twin_half().value),
              small.twin_half().tail_bound);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<std::uint64_t> raw;
      const auto k = oracle::uniform(1, 3);
      for (std::uint64_t i = 0; i < k; ++i) raw.push_back(2 * oracle::uniform(1, 100));
      const auto spec = TupleSpec::deduplicated(raw);
      const auto a = small.tuple_constant(spec);
      const auto b = big.tuple_constant(spec);
      ASSERT_EQ(a.exactly_zero, b.exactly_zero);
      ASSERT_LE(std::abs(a.value - b.value), a.tail_bound);
      ASSERT_GE(a.tail_bound, b.tail_bound);
    }
  }
}

TEST(TupleConstant, ZeroDetectionMatchesResidueCoverage) {
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint64_t> raw;
    const auto k = oracle::uniform(1, 4);
    for (std::uint64_t i = 0; i < k; ++i) raw.push_back(2 * oracle::uniform(1, 50));
    const auto spec = TupleSpec::deduplicated(raw);
    bool covered = false;
    for (std::uint64_t p = 2; p <= spec.size() + 1; ++p) {
      if (!oracle::is_prime(p)) continue;
      std::set<std::uint64_t> res{0};
      for (const auto s : spec.shifts()) res.insert(s % p);
      covered = covered || res.size() == p;
    }
    const auto v = tuple_constant(spec, 1'000);
    ASSERT_EQ(v.exactly_zero, covered);
    ASSERT_EQ(v.value == 0.0, covered);
  }
}

TEST(Gallagher, Examples) {
  const auto& s = series_1e6();
  const double c2 = s.pair_constant(1).value;
  EXPECT_DOUBLE_EQ(gallagher_average(2, s), c2);
  EXPECT_NEAR(gallagher_average(6, s), 4.0 * c2 / 3.0, 1e-12);
  EXPECT_NEAR(gallagher_average(6, s), 1.76043, 1e-5);
  EXPECT_NEAR(gallagher_average(10'000, s), 1.99902451, 1e-6);
  EXPECT_THROW(gallagher_average(0, s), PreconditionError);
  EXPECT_THROW(gallagher_average(7, s), PreconditionError);
}

TEST(Gallagher, MatchesSumOfPairConstants) {
  const auto& s = series_1e6();
  for (std::uint64_t y = 2; y <= 300; y += 2) {
    double sum = 0.0;
    for (std::uint64_t k = 1; 2 * k <= y; ++k) sum += s.pair_constant(k).value;
    ASSERT_NEAR(gallagher_average(y, s), 2.0 * sum / static_cast<double>(y), 1e-12);
  }
}

TEST(WeightedAverage, Examples) {
  const auto& s = series_1e6();
  const double c2 = s.pair_constant(1).value;
  EXPECT_NEAR(weighted_singular_average(3.0, s), c2 / 3.0, 1e-14);
  EXPECT_NEAR(weighted_singular_average(3.9, s), c2 / 3.0, 1e-14);
  EXPECT_EQ(weighted_singular_average(1.0, s), 0.0);
  EXPECT_NEAR(weighted_singular_average(1000.0, s), 1.0, 0.02);
  EXPECT_NEAR(weighted_singular_average(1000.0, s), 0.99549, 1e-5);
  EXPECT_THROW(weighted_singular_average(0.5, s), PreconditionError);
}

TEST(KTupleAverage, SmallCases) {
  const auto& s = series_1e6();
  const double c2 = s.pair_constant(1).value;
  EXPECT_NEAR(ktuple_gallagher_average(2, 1, s), c2, 1e-14);
  EXPECT_NEAR(ktuple_gallagher_average(2, 2, s), c2, 1e-14);
  // y = 4: ordered pairs over {2, 4}; {2, 4} itself has constant zero.
  const double c4 = s.pair_constant(2).value;
  EXPECT_NEAR(ktuple_gallagher_average(4, 2, s), (c2 + c4) / 4.0, 1e-14);
  EXPECT_NEAR(ktuple_gallagher_average(100, 1, s), gallagher_average(100, s), 1e-12);
  EXPECT_THROW(ktuple_gallagher_average(4, 3, s), UnsupportedError);
  EXPECT_THROW(ktuple_gallagher_average(3, 2, s), PreconditionError);
}

TEST(KTupleAverage, ApproachesFourFromBelow) {
  const auto& s = series_1e6();
  const double a40 = ktuple_gallagher_average(40, 2, s);
  const double a200 = ktuple_gallagher_average(200, 2, s);
  EXPECT_LT(std::abs(a200 - 4.0), std::abs(a40 - 4.0));
  EXPECT_NEAR(a200, 3.7749, 1e-3);
}

}  // namespace
}  // namespace hlav
