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

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "hlav/sieve.hpp"

namespace hlav {

// pi_{2k} over the window (lo, hi] for every 1 <= k <= max_shift / 2.
struct PairCountTable {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint64_t max_shift = 0;
  // counts[k - 1] = |{p in (lo, hi] : p and p + 2k prime}|
  std::vector<std::uint64_t> counts;

  std::uint64_t shift_terms() const noexcept { return counts.size(); }
  // Count for the pair gap 2k; k is 1-based.
  std::uint64_t at(std::uint64_t k) const { return counts.at(k - 1); }
};

// Even, positive, distinct, strictly increasing shifts 2h_1 < ... < 2h_k.
class TupleSpec {
 public:
  // Throws InvalidTupleError for empty, odd, zero, duplicate or unsorted input.
  explicit TupleSpec(std::vector<std::uint64_t> shifts);

  // Sorts and removes duplicates first; zero and odd entries still throw.
  static TupleSpec deduplicated(std::vector<std::uint64_t> shifts);

  std::span<const std::uint64_t> shifts() const noexcept { return shifts_; }
  std::size_t size() const noexcept { return shifts_.size(); }
  std::uint64_t max_shift() const noexcept { return shifts_.back(); }

  friend bool operator==(const TupleSpec&, const TupleSpec&) = default;

 private:
  std::vector<std::uint64_t> shifts_;
};

// A : N -> C, defined (and pure) on [1, domain_limit].
struct ArithmeticFunction {
  std::function<std::complex<double>(std::uint64_t)> eval;
  std::uint64_t domain_limit = 0;

  static ArithmeticFunction constant(std::complex<double> value,
                                     std::uint64_t domain_limit);
  // (-1)^n
  static ArithmeticFunction alternating(std::uint64_t domain_limit);
  // P(n); the bitmap must outlive the returned function.
  static ArithmeticFunction prime_indicator(const PrimeBitmap& pb);
};

struct CorrelationSums {
  std::uint64_t x = 0;
  std::complex<double> alpha;                               // sum A(n)
  std::map<std::uint64_t, std::complex<double>> alpha_shifts;  // sum A(n) conj A(n+k)
  double alpha_zero = 0.0;                                  // sum |A(n)|^2
};

// |{n in (lo, hi] : n and n + d both prime}| for any d >= 0, by word-level
// AND of the bitmap against itself shifted by d.
// Requires lo <= hi and hi + d <= pb.limit().
std::uint64_t shifted_coincidences(const PrimeBitmap& pb, std::uint64_t lo,
                                   std::uint64_t hi, std::uint64_t d);

// Requires lo < hi and hi + max_shift <= pb.limit(). An odd max_shift is
// accepted and covers k <= floor(max_shift / 2).
PairCountTable pair_counts(const PrimeBitmap& pb, std::uint64_t lo,
                           std::uint64_t hi, std::uint64_t max_shift);

// Entry k - 1 is pi_{2mk}(x), for k = 1..k_max.
std::vector<std::uint64_t> stride_pair_counts(const PrimeBitmap& pb,
                                              std::uint64_t x, std::uint64_t m,
                                              std::uint64_t k_max);

// |{p <= x : p + s prime for every s in spec}|
std::uint64_t tuple_count(const PrimeBitmap& pb, std::uint64_t x,
                          const TupleSpec& spec);

// Exact alpha, alpha_0 and alpha_k for each requested k (odd k allowed).
// Requires x + max(shifts) <= A.domain_limit.
CorrelationSums correlation_sums(const ArithmeticFunction& A, std::uint64_t x,
                                 std::span<const std::uint64_t> shifts);

}  // namespace hlav
