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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hlav/correlation.hpp"
#include "hlav/report.hpp"
#include "hlav/sieve.hpp"

namespace hlav {

// Distinct positive integers in increasing order.
class ShiftSet {
 public:
  // Sorts the input; throws PreconditionError on zero or duplicate entries
  // or an empty set.
  explicit ShiftSet(std::vector<std::uint64_t> elements);

  std::span<const std::uint64_t> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::uint64_t max() const noexcept { return elements_.back(); }
  // "a,b,c"
  std::string to_string() const;

 private:
  std::vector<std::uint64_t> elements_;
};

// M(x) = floor(x^theta).
std::uint64_t long_average_length(std::uint64_t x, double theta);

// (1/F^2) sum_{1 <= k <= F} (F - k) pi_{2k}(x). Requires x + 2F <= limit.
double weighted_short_sum(const PrimeBitmap& pb, std::uint64_t x,
                          std::uint64_t F);

// Both sides of sum_{n<=x} (sum_{a in B} P(n+a))^2
//             = sum_{(a,b) in B^2} sum_{n<=x} P(n+a) P(n+b).
struct CoincidenceIdentity {
  std::uint64_t square_sum = 0;    // left side, by a direct scan over n
  std::uint64_t diagonal = 0;      // a == b terms
  std::uint64_t off_diagonal = 0;  // a != b terms, both orders
  std::uint64_t pair_sum() const noexcept { return diagonal + off_diagonal; }
  bool holds() const noexcept { return square_sum == pair_sum(); }
};

// Requires x + max(B) <= pb.limit().
CoincidenceIdentity coincidence_identity(const PrimeBitmap& pb, std::uint64_t x,
                                         const ShiftSet& B);

// (2/M) sum_{2k<=M} pi_{2k}(x) against 2x/ln^2 x, with M = floor(x^theta).
VerificationReport verify_long_average(const PrimeBitmap& pb, std::uint64_t x,
                                       double theta,
                                       const Thresholds& thresholds = {});

// (2/M) sum_{2k<=M} (pi_{2k}(x+h) - pi_{2k}(x)) against 2h/ln^2 x.
VerificationReport verify_window_average(const PrimeBitmap& pb, std::uint64_t x,
                                         std::uint64_t h, double theta,
                                         const Thresholds& thresholds = {});

// (1/F^2) sum (F - k) pi_{2k}(x) >= (1 - 1/(2C)) x/ln^2 x, F = floor(E).
VerificationReport verify_weighted_short(const PrimeBitmap& pb, std::uint64_t x,
                                         double C, double E,
                                         const Thresholds& thresholds = {});

// (1/F) sum_{k<=F} pi_{2k}(x) against the same bound.
VerificationReport verify_unweighted_short(const PrimeBitmap& pb,
                                           std::uint64_t x, double C, double E,
                                           const Thresholds& thresholds = {});

// Triangular-weight k-tuple average; only k = 2 is supported. Tuples with
// repeated h_i are counted on their deduplicated shift set.
VerificationReport verify_ktuple_weighted(const PrimeBitmap& pb,
                                          std::uint64_t x, double C, double E,
                                          std::size_t k,
                                          const Thresholds& thresholds = {});

// (1/M^2) sum_{k<=M} 2(M - k) pi_{2mk}(x) >= x/ln^2 x with M = floor(h/(2m)).
// The unweighted variant (1/M) sum pi_{2mk}(x) against x/(2 ln^2 x) is
// reported in params (cor3_*).
VerificationReport verify_stride(const PrimeBitmap& pb, std::uint64_t x,
                                 std::uint64_t m, std::uint64_t h,
                                 const Thresholds& thresholds = {});

VerificationReport lemma1_margin(const PrimeBitmap& pb, std::uint64_t x,
                                 const ShiftSet& B,
                                 const Thresholds& thresholds = {});

VerificationReport lemma2_margin(const ArithmeticFunction& A, std::uint64_t x,
                                 const ShiftSet& B,
                                 const Thresholds& thresholds = {});

// E(x) for a scan rule: "log2" (ln^2 x), "sqrtlog" (ln x * sqrt(ln x)) or a
// positive decimal multiplier c (c * ln x).
double scan_length(std::string_view E_rule, std::uint64_t x);

// Weighted short average against x/ln^2 x over a grid (sorted ascending,
// duplicates dropped). Exploration only: every report has pass = true.
std::vector<VerificationReport> conjecture2_scan(
    const PrimeBitmap& pb, std::span<const std::uint64_t> x_grid,
    std::string_view E_rule, const Thresholds& thresholds = {});

}  // namespace hlav
