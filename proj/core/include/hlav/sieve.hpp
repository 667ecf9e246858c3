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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hlav {

struct SieveConfig;

// Immutable prime indicator over [1, limit].
//
// Integer n is stored at bit index n - 1: word (n - 1) / 64, bit (n - 1) % 64.
// The word array always carries at least one trailing zero word so that
// unaligned 64-bit reads starting anywhere in [0, limit) stay in bounds.
// A running popcount is kept per 4096-bit block, which makes pi(x) cost
// at most one block scan.
class PrimeBitmap {
 public:
  static constexpr std::uint64_t kBlockBits = std::uint64_t{1} << 12;
  static constexpr std::uint64_t kWordsPerBlock = kBlockBits / 64;

  PrimeBitmap() = default;

  // Adopts a raw word array and checks the structural invariants
  // (bit(1) clear, bit(2) set, no even n > 2, zero bits past limit).
  // Throws FormatError when the payload is not a valid prime indicator.
  static PrimeBitmap from_words(std::uint64_t limit,
                                std::vector<std::uint64_t> words);

  std::uint64_t limit() const noexcept { return limit_; }

  // Checked query; throws OutOfRangeError for n == 0 or n > limit.
  bool is_prime(std::uint64_t n) const;

  // Unchecked query for 1 <= n <= limit.
  bool test(std::uint64_t n) const noexcept {
    const std::uint64_t i = n - 1;
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  // pi(x) for 0 <= x <= limit.
  std::uint64_t prime_count(std::uint64_t x) const;

  // pi(hi) - pi(lo): primes p with lo < p <= hi.
  std::uint64_t prime_count_range(std::uint64_t lo, std::uint64_t hi) const;

  // Backing words, including the zero padding word(s).
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  // Number of bytes of the packed payload, ceil(limit / 8).
  std::size_t payload_bytes() const noexcept {
    return static_cast<std::size_t>((limit_ + 7) / 8);
  }

  friend bool operator==(const PrimeBitmap& a, const PrimeBitmap& b) noexcept {
    return a.limit_ == b.limit_ && a.words_ == b.words_;
  }

 private:
  friend PrimeBitmap build_sieve(std::uint64_t, const SieveConfig&);

  PrimeBitmap(std::uint64_t limit, std::vector<std::uint64_t> words);
  void build_block_index();

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> words_{0};
  // block_counts_[b] = set bits with index < b * kBlockBits.
  std::vector<std::uint64_t> block_counts_{0};
};

struct SieveConfig {
  // Bits per segment; at least 64 and a multiple of 64.
  std::uint64_t segment_size = std::uint64_t{1} << 20;
  // Maximum concurrently sieved segments; 0 selects the library default.
  unsigned parallelism = 0;
  // Upper bound on the bitmap allocation in bytes.
  std::uint64_t memory_budget_bytes = std::uint64_t{8} << 30;
};

// Number of bytes build_sieve would allocate for the bitmap and its index.
std::uint64_t sieve_memory_bytes(std::uint64_t limit);

// Segmented sieve of Eratosthenes. The result does not depend on
// config.segment_size or config.parallelism.
// Throws PreconditionError for limit == 0 or an invalid config, and
// ResourceError if the bitmap would exceed config.memory_budget_bytes.
PrimeBitmap build_sieve(std::uint64_t limit, const SieveConfig& config = {});

inline bool is_prime(const PrimeBitmap& pb, std::uint64_t n) {
  return pb.is_prime(n);
}

inline std::uint64_t prime_count_range(const PrimeBitmap& pb, std::uint64_t lo,
                                       std::uint64_t hi) {
  return pb.prime_count_range(lo, hi);
}

// Primes <= bound in ascending order (small helper around build_sieve).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

}  // namespace hlav
