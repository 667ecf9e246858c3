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

#include "hlav/sieve.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "hlav/error.hpp"
#include "hlav/parallel.hpp"

namespace hlav {
namespace {

std::atomic<unsigned> g_default_threads{0};

// Bits at even indices, i.e. odd integers n = i + 1.
constexpr std::uint64_t kOddMask = 0x5555555555555555ULL;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t word_count(std::uint64_t limit) { return (limit + 63) / 64 + 1; }

// Odd primes <= bound by a plain byte sieve; enough for the base primes.
std::vector<std::uint32_t> small_odd_primes(std::uint64_t bound) {
  std::vector<std::uint32_t> out;
  if (bound < 3) return out;
  std::vector<char> composite(bound + 1, 0);
  for (std::uint64_t p = 3; p <= bound; p += 2) {
    if (composite[p]) continue;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t q = p * p; q <= bound; q += 2 * p) composite[q] = 1;
  }
  return out;
}

std::string str(std::uint64_t v) { return std::to_string(v); }

}  // namespace

void set_default_threads(unsigned threads) noexcept {
  g_default_threads = threads;
}

unsigned default_threads() noexcept {
  const unsigned t = g_default_threads.load();
  if (t != 0) return t;
  return std::max(1u, std::thread::hardware_concurrency());
}

PrimeBitmap::PrimeBitmap(std::uint64_t limit, std::vector<std::uint64_t> words)
    : limit_(limit), words_(std::move(words)) {
  build_block_index();
}

void PrimeBitmap::build_block_index() {
  const std::uint64_t blocks = limit_ / kBlockBits + 1;
  block_counts_.assign(blocks + 1, 0);
  std::uint64_t running = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    block_counts_[b] = running;
    const std::uint64_t first = b * kWordsPerBlock;
    const std::uint64_t last =
        std::min<std::uint64_t>(first + kWordsPerBlock, words_.size());
    for (std::uint64_t w = first; w < last; ++w) running += std::popcount(words_[w]);
  }
  block_counts_[blocks] = running;
}

PrimeBitmap PrimeBitmap::from_words(std::uint64_t limit,
                                    std::vector<std::uint64_t> words) {
  if (limit == 0) throw FormatError("prime bitmap limit must be >= 1");
  const std::uint64_t needed = (limit + 63) / 64;
  if (words.size() < needed) {
    throw FormatError("prime bitmap payload holds fewer than limit bits");
  }
  for (std::uint64_t w = needed; w < words.size(); ++w) {
    if (words[w] != 0) throw FormatError("prime bitmap has bits past limit");
  }
  words.resize(word_count(limit), 0);
  if (limit % 64 != 0 && (words[needed - 1] >> (limit % 64)) != 0) {
    throw FormatError("prime bitmap has bits past limit");
  }
  if (words[0] & 1u) throw FormatError("prime bitmap marks 1 as prime");
  if (limit >= 2 && !(words[0] & 2u)) {
    throw FormatError("prime bitmap does not mark 2 as prime");
  }
  // Odd bit indices are even integers; only n = 2 (index 1) may be set.
  if ((words[0] & ~kOddMask & ~std::uint64_t{2}) != 0) {
    throw FormatError("prime bitmap marks an even integer > 2 as prime");
  }
  for (std::uint64_t w = 1; w < needed; ++w) {
    if (words[w] & ~kOddMask) {
      throw FormatError("prime bitmap marks an even integer > 2 as prime");
    }
  }
  return PrimeBitmap(limit, std::move(words));
}

bool PrimeBitmap::is_prime(std::uint64_t n) const {
  if (n == 0 || n > limit_) {
    throw OutOfRangeError("is_prime: n = " + str(n) + " outside [1, " +
                          str(limit_) + "]");
  }
  return test(n);
}

std::uint64_t PrimeBitmap::prime_count(std::uint64_t x) const {
  if (x > limit_) {
    throw OutOfRangeError("prime_count: x = " + str(x) + " exceeds limit " +
                          str(limit_));
  }
  const std::uint64_t block = x / kBlockBits;
  std::uint64_t count = block_counts_[block];
  const std::uint64_t end_word = x / 64;
  for (std::uint64_t w = block * kWordsPerBlock; w < end_word; ++w) {
    count += std::popcount(words_[w]);
  }
  if (const unsigned tail = x % 64; tail != 0) {
    count += std::popcount(words_[end_word] & ((std::uint64_t{1} << tail) - 1));
  }
  return count;
}

std::uint64_t PrimeBitmap::prime_count_range(std::uint64_t lo,
                                             std::uint64_t hi) const {
  if (lo > hi) {
    throw PreconditionError("prime_count_range: lo = " + str(lo) +
                            " > hi = " + str(hi));
  }
  if (hi > limit_) {
    throw OutOfRangeError("prime_count_range: hi = " + str(hi) +
                          " exceeds limit " + str(limit_));
  }
  return prime_count(hi) - prime_count(lo);
}

std::uint64_t sieve_memory_bytes(std::uint64_t limit) {
  return word_count(limit) * 8 + (limit / PrimeBitmap::kBlockBits + 2) * 8;
}

PrimeBitmap build_sieve(std::uint64_t limit, const SieveConfig& config) {
  if (limit == 0) throw PreconditionError("build_sieve: limit must be >= 1");
  if (config.segment_size < 64 || config.segment_size % 64 != 0) {
    throw PreconditionError("build_sieve: segment_size must be a multiple of "
                            "64 and at least 64, got " +
                            str(config.segment_size));
  }
  if (limit > (std::uint64_t{1} << 62) ||
      sieve_memory_bytes(limit) > config.memory_budget_bytes) {
    throw ResourceError("build_sieve: limit " + str(limit) + " needs " +
                        str(sieve_memory_bytes(limit)) +
                        " bytes, budget is " +
                        str(config.memory_budget_bytes));
  }

  const auto base = small_odd_primes(isqrt(limit));
  std::vector<std::uint64_t> words(word_count(limit), 0);
  const std::uint64_t seg_bits = config.segment_size;
  const std::uint64_t segments = (limit + seg_bits - 1) / seg_bits;

  // Segments cover whole words, so concurrent segments never share a word.
  detail::parallel_for(segments, config.parallelism, [&](std::size_t s) {
    const std::uint64_t first_bit = s * seg_bits;
    const std::uint64_t end_bit = std::min(first_bit + seg_bits, limit);
    const std::uint64_t first_word = first_bit / 64;
    const std::uint64_t end_word = (end_bit + 63) / 64;
    for (std::uint64_t w = first_word; w < end_word; ++w) words[w] = kOddMask;

    const std::uint64_t lo_n = first_bit + 1;
    const std::uint64_t hi_n = end_bit;
    for (const std::uint64_t p : base) {
      if (p * p > hi_n) break;
      std::uint64_t start = std::max(p * p, (lo_n + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t n = start; n <= hi_n; n += 2 * p) {
        const std::uint64_t i = n - 1;
        words[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
      }
    }
    if (s == 0) {
      words[0] &= ~std::uint64_t{1};
      if (limit >= 2) words[0] |= std::uint64_t{2};
    }
    if (end_bit == limit && limit % 64 != 0) {
      words[end_word - 1] &= (std::uint64_t{1} << (limit % 64)) - 1;
    }
  });

  return PrimeBitmap(limit, std::move(words));
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  const PrimeBitmap pb = build_sieve(bound);
  out.reserve(pb.prime_count(bound));
  const auto words = pb.words();
  for (std::uint64_t w = 0; w < words.size(); ++w) {
    for (std::uint64_t bits = words[w]; bits != 0; bits &= bits - 1) {
      out.push_back(w * 64 + std::countr_zero(bits) + 1);
    }
  }
  return out;
}

}  // namespace hlav
