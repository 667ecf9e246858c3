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

#include "hlav/correlation.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hlav/error.hpp"
#include "hlav/parallel.hpp"
#include "hlav/summation.hpp"

namespace hlav {
namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }

// 64 bits of the bitmap starting at bit index `word * 64 + offset_bits`.
struct ShiftedReader {
  const std::uint64_t* words;
  std::uint64_t word_offset;
  unsigned bit_offset;

  ShiftedReader(std::span<const std::uint64_t> w, std::uint64_t d)
      : words(w.data()), word_offset(d >> 6),
        bit_offset(static_cast<unsigned>(d & 63)) {}

  std::uint64_t operator()(std::uint64_t j) const noexcept {
    const std::uint64_t w = j + word_offset;
    if (bit_offset == 0) return words[w];
    return (words[w] >> bit_offset) | (words[w + 1] << (64 - bit_offset));
  }
};

// Mask of bit indices [lo, hi) restricted to word j.
std::uint64_t window_mask(std::uint64_t j, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t mask = ~std::uint64_t{0};
  if (j == lo / 64 && lo % 64 != 0) mask &= ~std::uint64_t{0} << (lo % 64);
  if (j == (hi - 1) / 64 && hi % 64 != 0) {
    mask &= (std::uint64_t{1} << (hi % 64)) - 1;
  }
  return mask;
}

// Counts n in (lo, hi] whose bit and all shifted bits are set.
// Bit indices are n - 1, so the window is [lo, hi) in index space.
std::uint64_t and_count(const PrimeBitmap& pb, std::uint64_t lo,
                        std::uint64_t hi,
                        std::span<const std::uint64_t> shifts) {
  if (lo >= hi) return 0;
  const auto words = pb.words();
  std::vector<ShiftedReader> readers;
  readers.reserve(shifts.size());
  for (const auto d : shifts) readers.emplace_back(words, d);

  const std::uint64_t first = lo / 64;
  const std::uint64_t last = (hi - 1) / 64;
  std::uint64_t count = 0;

  if (readers.size() == 1) {
    const ShiftedReader& r = readers.front();
    if (first == last) {
      return std::popcount(words[first] & r(first) & window_mask(first, lo, hi));
    }
    count += std::popcount(words[first] & r(first) & window_mask(first, lo, hi));
    for (std::uint64_t j = first + 1; j < last; ++j) {
      count += std::popcount(words[j] & r(j));
    }
    count += std::popcount(words[last] & r(last) & window_mask(last, lo, hi));
    return count;
  }

  for (std::uint64_t j = first; j <= last; ++j) {
    std::uint64_t acc = words[j] & window_mask(j, lo, hi);
    for (const auto& r : readers) {
      if (acc == 0) break;
      acc &= r(j);
    }
    count += std::popcount(acc);
  }
  return count;
}

}  // namespace

TupleSpec::TupleSpec(std::vector<std::uint64_t> shifts)
    : shifts_(std::move(shifts)) {
  if (shifts_.empty()) throw InvalidTupleError("tuple spec needs >= 1 shift");
  for (std::size_t i = 0; i < shifts_.size(); ++i) {
    const auto s = shifts_[i];
    if (s == 0 || s % 2 != 0) {
      throw InvalidTupleError("tuple shift " + str(s) +
                              " is not a positive even integer");
    }
    if (i > 0 && shifts_[i - 1] >= s) {
      throw InvalidTupleError(shifts_[i - 1] == s
                                  ? "duplicate tuple shift " + str(s)
                                  : "tuple shifts must be increasing");
    }
  }
}

TupleSpec TupleSpec::deduplicated(std::vector<std::uint64_t> shifts) {
  std::sort(shifts.begin(), shifts.end());
  shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
  return TupleSpec(std::move(shifts));
}

ArithmeticFunction ArithmeticFunction::constant(std::complex<double> value,
                                                std::uint64_t domain_limit) {
  return {[value](std::uint64_t) { return value; }, domain_limit};
}

ArithmeticFunction ArithmeticFunction::alternating(std::uint64_t domain_limit) {
  return {[](std::uint64_t n) {
            return std::complex<double>(n % 2 == 0 ? 1.0 : -1.0);
          },
          domain_limit};
}

ArithmeticFunction ArithmeticFunction::prime_indicator(const PrimeBitmap& pb) {
  return {[&pb](std::uint64_t n) {
            return std::complex<double>(pb.test(n) ? 1.0 : 0.0);
          },
          pb.limit()};
}

std::uint64_t shifted_coincidences(const PrimeBitmap& pb, std::uint64_t lo,
                                   std::uint64_t hi, std::uint64_t d) {
  if (lo > hi) {
    throw PreconditionError("shifted_coincidences: lo = " + str(lo) +
                            " > hi = " + str(hi));
  }
  if (hi + d > pb.limit()) {
    throw PreconditionError("shifted_coincidences: hi + d = " + str(hi + d) +
                            " exceeds bitmap limit " + str(pb.limit()));
  }
  const std::uint64_t shift[] = {d};
  return and_count(pb, lo, hi, shift);
}

PairCountTable pair_counts(const PrimeBitmap& pb, std::uint64_t lo,
                           std::uint64_t hi, std::uint64_t max_shift) {
  if (lo >= hi) {
    throw PreconditionError("pair_counts: need lo < hi, got lo = " + str(lo) +
                            ", hi = " + str(hi));
  }
  if (hi + max_shift > pb.limit()) {
    throw PreconditionError("pair_counts: hi + max_shift = " +
                            str(hi + max_shift) + " exceeds bitmap limit " +
                            str(pb.limit()));
  }
  PairCountTable table{lo, hi, max_shift, {}};
  table.counts.assign(max_shift / 2, 0);
  detail::parallel_for(table.counts.size(), 0, [&](std::size_t i) {
    const std::uint64_t shift[] = {2 * (i + 1)};
    table.counts[i] = and_count(pb, lo, hi, shift);
  });
  return table;
}

std::vector<std::uint64_t> stride_pair_counts(const PrimeBitmap& pb,
                                              std::uint64_t x, std::uint64_t m,
                                              std::uint64_t k_max) {
  if (m == 0) throw PreconditionError("stride_pair_counts: m must be >= 1");
  if (x + 2 * m * k_max > pb.limit()) {
    throw PreconditionError("stride_pair_counts: x + 2*m*k_max = " +
                            str(x + 2 * m * k_max) + " exceeds bitmap limit " +
                            str(pb.limit()));
  }
  std::vector<std::uint64_t> out(k_max, 0);
  detail::parallel_for(out.size(), 0, [&](std::size_t i) {
    const std::uint64_t shift[] = {2 * m * (i + 1)};
    out[i] = and_count(pb, 0, x, shift);
  });
  return out;
}

std::uint64_t tuple_count(const PrimeBitmap& pb, std::uint64_t x,
                          const TupleSpec& spec) {
  if (x + spec.max_shift() > pb.limit()) {
    throw PreconditionError("tuple_count: x + max shift = " +
                            str(x + spec.max_shift()) +
                            " exceeds bitmap limit " + str(pb.limit()));
  }
  return and_count(pb, 0, x, spec.shifts());
}

CorrelationSums correlation_sums(const ArithmeticFunction& A, std::uint64_t x,
                                 std::span<const std::uint64_t> shifts) {
  std::uint64_t reach = 0;
  for (const auto k : shifts) reach = std::max(reach, k);
  if (x + reach > A.domain_limit) {
    throw PreconditionError("correlation_sums: x + max shift = " +
                            str(x + reach) + " exceeds domain limit " +
                            str(A.domain_limit));
  }
  // values[n] = A(n) for n in [1, x + reach]; values[0] unused.
  std::vector<std::complex<double>> values(x + reach + 1);
  for (std::uint64_t n = 1; n <= x + reach; ++n) values[n] = A.eval(n);

  CorrelationSums out;
  out.x = x;
  CompensatedComplexSum alpha;
  CompensatedSum alpha_zero;
  for (std::uint64_t n = 1; n <= x; ++n) {
    alpha += values[n];
    alpha_zero += std::norm(values[n]);
  }
  out.alpha = alpha.value();
  out.alpha_zero = alpha_zero.value();

  for (const auto k : shifts) {
    if (out.alpha_shifts.contains(k)) continue;
    CompensatedComplexSum acc;
    for (std::uint64_t n = 1; n <= x; ++n) {
      acc += values[n] * std::conj(values[n + k]);
    }
    out.alpha_shifts.emplace(k, acc.value());
  }
  return out;
}

}  // namespace hlav
