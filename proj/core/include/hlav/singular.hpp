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
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "hlav/correlation.hpp"

namespace hlav {

// A truncated Euler product. The exact infinite product lies within
// tail_bound of value.
struct SingularValue {
  double value = 0.0;
  double tail_bound = 0.0;
  std::uint64_t prime_bound = 0;
  // Set when some prime p has every residue class covered; the constant is 0.
  bool exactly_zero = false;
};

// Residue coverage of {0} u shifts for every prime p <= |shifts| + 1. Primes
// beyond that can never be fully covered.
struct TupleConstantSpec {
  TupleSpec shifts;
  std::map<std::uint64_t, std::uint64_t> nu_table;

  explicit TupleConstantSpec(TupleSpec s);
  bool admissible() const;
};

// Number of residue classes mod p met by {0, s_1, ..., s_k}.
// Throws PreconditionError if p is not prime.
std::uint64_t nu(const TupleSpec& shifts, std::uint64_t p);

// Distinct prime factors of n (n >= 1) by trial division, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

// Holds the primes up to a fixed truncation bound and caches the products
// shared by many constants, so averages over thousands of shifts cost one
// pass over the primes.
//
// For a tuple of size k and a prime p that divides no shift and no shift
// difference, the Euler factor is
//   g_k(p) = (1 - (k + 1)/p) (1 - 1/p)^-(k + 1).
// With u = (k + 1)/p < 1 one has 0 <= -log g_k(p) <= u^2 / (2 (1 - u)), so
// every omitted factor (p > P) satisfies |log g_k(p)| <= c_k / p^2 with
//   c_k = (k + 1)^2 (P + 1) / (2 (P - k)).
// Summing 1/n^2 over n > P gives at most 1/P, hence the truncation error is
// at most |value| * expm1(c_k / P).
class SingularSeries {
 public:
  // Requires prime_bound >= 3.
  explicit SingularSeries(std::uint64_t prime_bound);

  std::uint64_t prime_bound() const noexcept { return prime_bound_; }
  const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }

  // prod_{2 < p <= P} p (p - 2) / (p - 1)^2
  SingularValue twin_half() const;

  // C_{2k} = 2 * twin_half * prod_{2 < p | k} (p - 1)/(p - 2).
  // Requires P >= largest odd prime factor of k.
  SingularValue pair_constant(std::uint64_t k) const;

  // C_{2h_1..2h_k} = prod_p (1 - nu(p)/p) (1 - 1/p)^-(k+1), truncated at P.
  // Requires P >= k + 1 and P >= every prime dividing a shift or a pairwise
  // shift difference.
  SingularValue tuple_constant(const TupleSpec& spec) const;

  // Upper bound on |log| of the omitted tail for tuples of size k.
  double log_tail_bound(std::size_t k) const;

 private:
  // prod_{k+1 < p <= P} g_k(p)
  double generic_product(std::size_t k) const;

  std::uint64_t prime_bound_;
  std::vector<std::uint64_t> primes_;
  mutable std::mutex cache_mu_;
  mutable std::map<std::size_t, double> generic_cache_;
};

SingularValue twin_half_constant(std::uint64_t prime_bound);
SingularValue pair_constant(std::uint64_t k, std::uint64_t prime_bound);
SingularValue tuple_constant(const TupleSpec& spec, std::uint64_t prime_bound);

// (2/y) sum_{2k <= y} C_{2k}. Requires even y >= 2.
double gallagher_average(std::uint64_t y, std::uint64_t prime_bound);
double gallagher_average(std::uint64_t y, const SingularSeries& series);

// (1/F^2) sum_{1 <= k <= F} (F - k) C_{2k} with F = floor(E). Requires E >= 1.
double weighted_singular_average(double E, std::uint64_t prime_bound);
double weighted_singular_average(double E, const SingularSeries& series);

// (2/y)^k sum over ordered (2h_1, ..., 2h_k), each 2h_i <= y, of the tuple
// constant of the deduplicated shift set. Supports k in {1, 2}.
double ktuple_gallagher_average(std::uint64_t y, std::size_t k,
                                std::uint64_t prime_bound);
double ktuple_gallagher_average(std::uint64_t y, std::size_t k,
                                const SingularSeries& series);

}  // namespace hlav
