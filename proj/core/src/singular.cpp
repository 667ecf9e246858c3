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

#include "hlav/singular.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hlav/error.hpp"
#include "hlav/sieve.hpp"
#include "hlav/summation.hpp"

namespace hlav {
namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }

bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// (1 - nu/p) (1 - 1/p)^-(k+1)
double euler_factor(std::uint64_t p, std::uint64_t nu_p, std::size_t k) {
  const double pd = static_cast<double>(p);
  return (static_cast<double>(p - nu_p) / pd) *
         std::pow(pd / (pd - 1.0), static_cast<double>(k + 1));
}

// Primes dividing at least one shift or one pairwise difference.
std::set<std::uint64_t> relevant_primes(const TupleSpec& spec) {
  std::set<std::uint64_t> out;
  const auto s = spec.shifts();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (const auto p : prime_factors(s[i])) out.insert(p);
    for (std::size_t j = 0; j < i; ++j) {
      for (const auto p : prime_factors(s[i] - s[j])) out.insert(p);
    }
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  if (n == 0) throw PreconditionError("prime_factors: n must be >= 1");
  std::vector<std::uint64_t> out;
  if (n % 2 == 0) {
    out.push_back(2);
    while (n % 2 == 0) n /= 2;
  }
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t nu(const TupleSpec& shifts, std::uint64_t p) {
  if (!is_prime_trial(p)) {
    throw PreconditionError("nu: p = " + str(p) + " is not prime");
  }
  std::vector<std::uint64_t> residues{0};
  for (const auto s : shifts.shifts()) residues.push_back(s % p);
  std::sort(residues.begin(), residues.end());
  return static_cast<std::uint64_t>(
      std::unique(residues.begin(), residues.end()) - residues.begin());
}

TupleConstantSpec::TupleConstantSpec(TupleSpec s) : shifts(std::move(s)) {
  const std::uint64_t reach = shifts.size() + 1;
  for (std::uint64_t p = 2; p <= reach; ++p) {
    if (is_prime_trial(p)) nu_table.emplace(p, nu(shifts, p));
  }
}

bool TupleConstantSpec::admissible() const {
  return std::none_of(nu_table.begin(), nu_table.end(),
                      [](const auto& e) { return e.second == e.first; });
}

SingularSeries::SingularSeries(std::uint64_t prime_bound)
    : prime_bound_(prime_bound) {
  if (prime_bound < 3) {
    throw PreconditionError("prime_bound must be >= 3, got " +
                            str(prime_bound));
  }
  primes_ = primes_up_to(prime_bound);
}

double SingularSeries::log_tail_bound(std::size_t k) const {
  const double P = static_cast<double>(prime_bound_);
  const double kk = static_cast<double>(k);
  const double c = (kk + 1) * (kk + 1) * (P + 1) / (2.0 * (P - kk));
  return c / P;
}

double SingularSeries::generic_product(std::size_t k) const {
  {
    std::lock_guard lock(cache_mu_);
    if (auto it = generic_cache_.find(k); it != generic_cache_.end()) {
      return it->second;
    }
  }
  double prod = 1.0;
  for (const auto p : primes_) {
    if (p <= k + 1) continue;
    prod *= euler_factor(p, k + 1, k);
  }
  std::lock_guard lock(cache_mu_);
  generic_cache_.emplace(k, prod);
  return prod;
}

SingularValue SingularSeries::twin_half() const {
  const double value = generic_product(1);
  return {value, std::abs(value) * std::expm1(log_tail_bound(1)), prime_bound_,
          false};
}

SingularValue SingularSeries::pair_constant(std::uint64_t k) const {
  if (k == 0) throw PreconditionError("pair_constant: k must be >= 1");
  const SingularValue half = twin_half();
  double factor = 2.0;
  for (const auto p : prime_factors(k)) {
    if (p == 2) continue;
    if (p > prime_bound_) {
      throw PreconditionError("pair_constant: prime factor " + str(p) +
                              " of k exceeds prime_bound " + str(prime_bound_));
    }
    factor *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
  }
  return {factor * half.value, factor * half.tail_bound, prime_bound_, false};
}

SingularValue SingularSeries::tuple_constant(const TupleSpec& spec) const {
  const std::size_t k = spec.size();
  if (prime_bound_ < k + 1) {
    throw PreconditionError("tuple_constant: prime_bound " + str(prime_bound_) +
                            " < k + 1 = " + str(k + 1));
  }
  const auto special = relevant_primes(spec);
  if (!special.empty() && *special.rbegin() > prime_bound_) {
    throw PreconditionError("tuple_constant: prime " + str(*special.rbegin()) +
                            " divides a shift or difference but exceeds "
                            "prime_bound " +
                            str(prime_bound_));
  }
  const TupleConstantSpec coverage(spec);
  if (!coverage.admissible()) return {0.0, 0.0, prime_bound_, true};

  double value = generic_product(k);
  for (const auto& [p, nu_p] : coverage.nu_table) {
    value *= euler_factor(p, nu_p, k);
  }
  for (const auto p : special) {
    if (p <= k + 1) continue;
    value *= euler_factor(p, nu(spec, p), k) / euler_factor(p, k + 1, k);
  }
  return {value, std::abs(value) * std::expm1(log_tail_bound(k)), prime_bound_,
          false};
}

SingularValue twin_half_constant(std::uint64_t prime_bound) {
  return SingularSeries(prime_bound).twin_half();
}

SingularValue pair_constant(std::uint64_t k, std::uint64_t prime_bound) {
  return SingularSeries(prime_bound).pair_constant(k);
}

SingularValue tuple_constant(const TupleSpec& spec, std::uint64_t prime_bound) {
  return SingularSeries(prime_bound).tuple_constant(spec);
}

double gallagher_average(std::uint64_t y, const SingularSeries& series) {
  if (y < 2 || y % 2 != 0) {
    throw PreconditionError("gallagher_average: y must be even and >= 2, got " +
                            str(y));
  }
  CompensatedSum sum;
  for (std::uint64_t k = 1; k <= y / 2; ++k) {
    sum += series.pair_constant(k).value;
  }
  return 2.0 * sum.value() / static_cast<double>(y);
}

double gallagher_average(std::uint64_t y, std::uint64_t prime_bound) {
  return gallagher_average(y, SingularSeries(prime_bound));
}

double weighted_singular_average(double E, const SingularSeries& series) {
  if (!(E >= 1.0) || !std::isfinite(E)) {
    throw PreconditionError("weighted_singular_average: E must be >= 1");
  }
  const auto F = static_cast<std::uint64_t>(std::floor(E));
  CompensatedSum sum;
  for (std::uint64_t k = 1; k <= F; ++k) {
    sum += static_cast<double>(F - k) * series.pair_constant(k).value;
  }
  const double Fd = static_cast<double>(F);
  return sum.value() / (Fd * Fd);
}

double weighted_singular_average(double E, std::uint64_t prime_bound) {
  return weighted_singular_average(E, SingularSeries(prime_bound));
}

double ktuple_gallagher_average(std::uint64_t y, std::size_t k,
                                const SingularSeries& series) {
  if (k == 0 || k > 2) {
    throw UnsupportedError("ktuple_gallagher_average: k = " + str(k) +
                           " unsupported (k must be 1 or 2)");
  }
  if (k == 1) return gallagher_average(y, series);
  if (y < 2 || y % 2 != 0) {
    throw PreconditionError(
        "ktuple_gallagher_average: y must be even and >= 2, got " + str(y));
  }
  const std::uint64_t K = y / 2;
  CompensatedSum sum;
  for (std::uint64_t h1 = 1; h1 <= K; ++h1) {
    for (std::uint64_t h2 = 1; h2 <= K; ++h2) {
      const auto spec = TupleSpec::deduplicated({2 * h1, 2 * h2});
      sum += series.tuple_constant(spec).value;
    }
  }
  const double scale = 2.0 / static_cast<double>(y);
  return sum.value() * scale * scale;
}

double ktuple_gallagher_average(std::uint64_t y, std::size_t k,
                                std::uint64_t prime_bound) {
  return ktuple_gallagher_average(y, k, SingularSeries(prime_bound));
}

}  // namespace hlav
