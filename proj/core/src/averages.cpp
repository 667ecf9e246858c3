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

#include "hlav/averages.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "hlav/error.hpp"
#include "hlav/summation.hpp"

namespace hlav {
namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }

double ln(std::uint64_t x) { return std::log(static_cast<double>(x)); }

double pnt_pair_density(std::uint64_t x) {
  const double l = ln(x);
  return static_cast<double>(x) / (l * l);
}

void require_limit(const PrimeBitmap& pb, std::uint64_t needed,
                   std::string_view op) {
  if (needed > pb.limit()) {
    throw PreconditionError(std::string(op) + ": needs bitmap limit >= " +
                            str(needed) + ", have " + str(pb.limit()));
  }
}

void require_x(std::uint64_t x, std::string_view op) {
  if (x < 2) {
    throw PreconditionError(std::string(op) + ": x must be >= 2, got " + str(x));
  }
}

// Shared guards of the short-interval statements; returns floor(E).
std::uint64_t check_short(const PrimeBitmap& pb, std::uint64_t x, double C,
                          double E, std::string_view op) {
  require_x(x, op);
  if (!(C > 0.5) || !std::isfinite(C)) {
    throw PreconditionError(std::string(op) + ": C must be > 1/2, got " +
                            format_double(C));
  }
  if (!std::isfinite(E) || C * ln(x) > E) {
    throw PreconditionError(std::string(op) + ": need E >= C ln x = " +
                            format_double(C * ln(x)) + ", got E = " +
                            format_double(E));
  }
  if (E > pnt_pair_density(x)) {
    throw PreconditionError(std::string(op) + ": need E <= x/ln^2 x = " +
                            format_double(pnt_pair_density(x)));
  }
  const auto F = static_cast<std::uint64_t>(std::floor(E));
  if (F < 1) throw PreconditionError(std::string(op) + ": floor(E) must be >= 1");
  require_limit(pb, x + 2 * F, op);
  return F;
}

void short_params(VerificationReport& r, double C, double E, std::uint64_t F) {
  r.params.set("C", C);
  r.params.set("E", E);
  r.params.set("floor_E", F);
}

}  // namespace

ShiftSet::ShiftSet(std::vector<std::uint64_t> elements)
    : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (elements_.empty()) throw PreconditionError("shift set must be non-empty");
  if (elements_.front() == 0) {
    throw PreconditionError("shift set elements must be positive");
  }
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end()) {
    throw PreconditionError("shift set elements must be distinct");
  }
}

std::string ShiftSet::to_string() const {
  std::string out;
  for (const auto e : elements_) {
    if (!out.empty()) out += ',';
    out += str(e);
  }
  return out;
}

std::uint64_t long_average_length(std::uint64_t x, double theta) {
  return static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<long double>(x),
                          static_cast<long double>(theta))));
}

double weighted_short_sum(const PrimeBitmap& pb, std::uint64_t x,
                          std::uint64_t F) {
  if (F == 0) throw PreconditionError("weighted_short_sum: F must be >= 1");
  const auto table = pair_counts(pb, 0, x, 2 * F);
  std::uint64_t sum = 0;
  for (std::uint64_t k = 1; k <= F; ++k) sum += (F - k) * table.at(k);
  const double Fd = static_cast<double>(F);
  return static_cast<double>(sum) / (Fd * Fd);
}

CoincidenceIdentity coincidence_identity(const PrimeBitmap& pb, std::uint64_t x,
                                         const ShiftSet& B) {
  require_limit(pb, x + B.max(), "coincidence_identity");
  const auto b = B.elements();
  CoincidenceIdentity id;
  for (std::uint64_t n = 1; n <= x; ++n) {
    std::uint64_t s = 0;
    for (const auto a : b) s += pb.test(n + a) ? 1 : 0;
    id.square_sum += s * s;
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    id.diagonal += pb.prime_count_range(b[i], x + b[i]);
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      id.off_diagonal += 2 * shifted_coincidences(pb, b[i], x + b[i], b[j] - b[i]);
    }
  }
  return id;
}

VerificationReport verify_long_average(const PrimeBitmap& pb, std::uint64_t x,
                                       double theta,
                                       const Thresholds& thresholds) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw PreconditionError("verify_long_average: theta must lie in (0, 1)");
  }
  require_x(x, "verify_long_average");
  const std::uint64_t M = long_average_length(x, theta);
  if (M < 2) {
    throw PreconditionError("verify_long_average: M = floor(x^theta) = " +
                            str(M) + " < 2");
  }
  require_limit(pb, x + M, "verify_long_average");

  const auto table = pair_counts(pb, 0, x, M);
  std::uint64_t total = 0;
  for (const auto c : table.counts) total += c;

  VerificationReport r;
  r.statement_id = StatementId::kThm1Long;
  r.x = x;
  r.params.set("theta", theta);
  r.params.set("M", M);
  r.params.set("shift_terms", table.shift_terms());
  r.params.set("pair_sum", total);
  r.lhs = 2.0 * static_cast<double>(total) / static_cast<double>(M);
  r.rhs = 2.0 * pnt_pair_density(x);
  judge_asymptotic(r, thresholds);
  return r;
}

VerificationReport verify_window_average(const PrimeBitmap& pb, std::uint64_t x,
                                         std::uint64_t h, double theta,
                                         const Thresholds& thresholds) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw PreconditionError("verify_window_average: theta must lie in (0, 1)");
  }
  require_x(x, "verify_window_average");
  const std::uint64_t M = long_average_length(x, theta);
  if (M < 2) {
    throw PreconditionError("verify_window_average: M = floor(x^theta) = " +
                            str(M) + " < 2");
  }
  if (h < M || h > x) {
    throw PreconditionError("verify_window_average: need M = " + str(M) +
                            " <= h <= x, got h = " + str(h));
  }
  require_limit(pb, x + h + M, "verify_window_average");

  const auto table = pair_counts(pb, x, x + h, M);
  std::uint64_t total = 0;
  for (const auto c : table.counts) total += c;

  VerificationReport r;
  r.statement_id = StatementId::kThm1Window;
  r.x = x;
  r.params.set("theta", theta);
  r.params.set("h", h);
  r.params.set("M", M);
  r.params.set("pair_sum", total);
  r.lhs = 2.0 * static_cast<double>(total) / static_cast<double>(M);
  const double l = ln(x);
  r.rhs = 2.0 * static_cast<double>(h) / (l * l);
  judge_asymptotic(r, thresholds);
  return r;
}

VerificationReport verify_weighted_short(const PrimeBitmap& pb, std::uint64_t x,
                                         double C, double E,
                                         const Thresholds& thresholds) {
  const auto F = check_short(pb, x, C, E, "verify_weighted_short");
  VerificationReport r;
  r.statement_id = StatementId::kThm2Weighted;
  r.x = x;
  short_params(r, C, E, F);
  r.lhs = weighted_short_sum(pb, x, F);
  r.rhs = (1.0 - 1.0 / (2.0 * C)) * pnt_pair_density(x);
  judge_lower_bound(r, thresholds);
  return r;
}

VerificationReport verify_unweighted_short(const PrimeBitmap& pb,
                                           std::uint64_t x, double C, double E,
                                           const Thresholds& thresholds) {
  const auto F = check_short(pb, x, C, E, "verify_unweighted_short");
  const auto table = pair_counts(pb, 0, x, 2 * F);
  std::uint64_t total = 0;
  for (const auto c : table.counts) total += c;

  VerificationReport r;
  r.statement_id = StatementId::kCor2Unweighted;
  r.x = x;
  short_params(r, C, E, F);
  r.lhs = static_cast<double>(total) / static_cast<double>(F);
  r.rhs = (1.0 - 1.0 / (2.0 * C)) * pnt_pair_density(x);
  judge_lower_bound(r, thresholds);
  return r;
}

VerificationReport verify_ktuple_weighted(const PrimeBitmap& pb,
                                          std::uint64_t x, double C, double E,
                                          std::size_t k,
                                          const Thresholds& thresholds) {
  if (k != 2) {
    throw UnsupportedError("verify_ktuple_weighted: only k = 2 is supported, "
                           "got k = " + str(k));
  }
  const auto F = check_short(pb, x, C, E, "verify_ktuple_weighted");

  std::map<std::vector<std::uint64_t>, std::uint64_t> counts;
  std::uint64_t weighted = 0;
  for (std::uint64_t h1 = 1; h1 <= F; ++h1) {
    for (std::uint64_t h2 = 1; h2 <= F; ++h2) {
      const std::uint64_t weight = F - std::max(h1, h2);
      if (weight == 0) continue;
      const auto spec = TupleSpec::deduplicated({2 * h1, 2 * h2});
      std::vector<std::uint64_t> key(spec.shifts().begin(), spec.shifts().end());
      auto it = counts.find(key);
      if (it == counts.end()) {
        it = counts.emplace(std::move(key), tuple_count(pb, x, spec)).first;
      }
      weighted += weight * it->second;
    }
  }

  const double Fd = static_cast<double>(F);
  const double l = ln(x);
  VerificationReport r;
  r.statement_id = StatementId::kThm3Ktuple;
  r.x = x;
  short_params(r, C, E, F);
  r.params.set("k", std::uint64_t{k});
  r.params.set("weighted_tuple_sum", weighted);
  r.lhs = 3.0 * static_cast<double>(weighted) / (4.0 * Fd * Fd * Fd);
  r.rhs = (1.0 - 1.0 / (4.0 * C * C)) * static_cast<double>(x) / (l * l * l);
  r.notes = "repeated shifts counted on the deduplicated set";
  judge_lower_bound(r, thresholds);
  return r;
}

VerificationReport verify_stride(const PrimeBitmap& pb, std::uint64_t x,
                                 std::uint64_t m, std::uint64_t h,
                                 const Thresholds& thresholds) {
  require_x(x, "verify_stride");
  if (m == 0) throw PreconditionError("verify_stride: m must be >= 1");
  const std::uint64_t M = h / (2 * m);
  if (M < 2) {
    throw PreconditionError("verify_stride: M = floor(h/(2m)) = " + str(M) +
                            " < 2");
  }
  const double l = ln(x);
  if (static_cast<double>(h) < 2.0 * l ||
      static_cast<double>(h) > pnt_pair_density(x)) {
    throw PreconditionError("verify_stride: need 2 ln x <= h <= x/ln^2 x, got "
                            "h = " + str(h));
  }
  require_limit(pb, x + 2 * m * M, "verify_stride");

  const auto counts = stride_pair_counts(pb, x, m, M);
  std::uint64_t weighted = 0;
  std::uint64_t plain = 0;
  for (std::uint64_t k = 1; k <= M; ++k) {
    weighted += 2 * (M - k) * counts[k - 1];
    plain += counts[k - 1];
  }
  const double Md = static_cast<double>(M);

  VerificationReport r;
  r.statement_id = StatementId::kThm4Stride;
  r.x = x;
  r.params.set("m", m);
  r.params.set("h", h);
  r.params.set("M", M);
  const double cor_lhs = static_cast<double>(plain) / Md;
  const double cor_rhs = pnt_pair_density(x) / 2.0;
  r.params.set("cor3_lhs", cor_lhs);
  r.params.set("cor3_rhs", cor_rhs);
  r.params.set("cor3_margin", cor_lhs - cor_rhs);
  r.lhs = static_cast<double>(weighted) / (Md * Md);
  r.rhs = pnt_pair_density(x);
  judge_lower_bound(r, thresholds);
  return r;
}

VerificationReport lemma1_margin(const PrimeBitmap& pb, std::uint64_t x,
                                 const ShiftSet& B,
                                 const Thresholds& thresholds) {
  require_x(x, "lemma1_margin");
  if (static_cast<double>(B.max()) > pnt_pair_density(x)) {
    throw PreconditionError("lemma1_margin: max(B) = " + str(B.max()) +
                            " exceeds x/ln^2 x = " +
                            format_double(pnt_pair_density(x)));
  }
  require_limit(pb, x + B.max(), "lemma1_margin");

  const auto id = coincidence_identity(pb, x, B);
  const auto b = B.elements();
  // pi_{|a-b|}(x) form and the exact bound on its distance from the
  // coincidence form: p in (0, a] or (x, x + a] are the only differences.
  std::uint64_t shift_form = 0;
  std::uint64_t correction = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      shift_form += 2 * shifted_coincidences(pb, 0, x, b[j] - b[i]);
      correction += 2 * (pb.prime_count(b[i]) + pb.prime_count_range(x, x + b[i]));
    }
  }
  const double size = static_cast<double>(B.size());
  const double norm = size * size;
  const double l = ln(x);

  VerificationReport r;
  r.statement_id = StatementId::kLemma1;
  r.x = x;
  r.params.set("B", B.to_string());
  r.params.set("B_size", std::uint64_t{B.size()});
  r.params.set("identity_square_sum", id.square_sum);
  r.params.set("identity_pair_sum", id.pair_sum());
  r.params.set("identity_holds", std::uint64_t{id.holds() ? 1u : 0u});
  r.params.set("shift_form_lhs", static_cast<double>(shift_form) / norm);
  r.params.set("boundary_correction_bound", static_cast<double>(correction) / norm);
  r.lhs = static_cast<double>(id.off_diagonal) / norm;
  r.rhs = pnt_pair_density(x) - static_cast<double>(x) / (size * l);
  r.notes = "lhs uses exact coincidence sums over n+a, n+b";
  judge_lower_bound(r, thresholds);
  if (!id.holds()) {
    r.pass = false;
    r.notes += "; square-sum identity FAILED";
  }
  return r;
}

VerificationReport lemma2_margin(const ArithmeticFunction& A, std::uint64_t x,
                                 const ShiftSet& B,
                                 const Thresholds& thresholds) {
  if (x < 1) throw PreconditionError("lemma2_margin: x must be >= 1");
  if (x + B.max() > A.domain_limit) {
    throw PreconditionError("lemma2_margin: x + max(B) = " + str(x + B.max()) +
                            " exceeds domain limit " + str(A.domain_limit));
  }
  const auto b = B.elements();
  std::vector<std::complex<double>> values(x + B.max() + 1);
  for (std::uint64_t n = 1; n < values.size(); ++n) values[n] = A.eval(n);

  CompensatedComplexSum exact;
  std::vector<std::uint64_t> diffs;
  for (const auto a : b) {
    for (const auto c : b) {
      if (a == c) continue;
      if (c > a) diffs.push_back(c - a);
      for (std::uint64_t n = 1; n <= x; ++n) {
        exact += values[n + a] * std::conj(values[n + c]);
      }
    }
  }
  const auto sums = correlation_sums(A, x, diffs);
  // alpha_{-d} is taken as conj(alpha_d) in the shift form.
  CompensatedSum shift_form;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      shift_form += 2.0 * sums.alpha_shifts.at(b[j] - b[i]).real();
    }
  }

  const double size = static_cast<double>(B.size());
  VerificationReport r;
  r.statement_id = StatementId::kLemma2;
  r.x = x;
  r.params.set("B", B.to_string());
  r.params.set("B_size", std::uint64_t{B.size()});
  r.params.set("alpha_re", sums.alpha.real());
  r.params.set("alpha_im", sums.alpha.imag());
  r.params.set("alpha_zero", sums.alpha_zero);
  r.params.set("shift_form_lhs", std::abs(shift_form.value()) / (size * size));
  r.lhs = std::abs(exact.value()) / (size * size);
  r.rhs = std::norm(sums.alpha) / static_cast<double>(x) - sums.alpha_zero / size;
  r.notes = "lhs uses exact sums of A(n+a) conj A(n+b)";
  judge_lower_bound(r, thresholds);
  return r;
}

double scan_length(std::string_view E_rule, std::uint64_t x) {
  const double l = ln(x);
  if (E_rule == "log2") return l * l;
  if (E_rule == "sqrtlog") return l * std::sqrt(l);
  double c = 0.0;
  const auto [ptr, ec] =
      std::from_chars(E_rule.data(), E_rule.data() + E_rule.size(), c);
  if (ec != std::errc{} || ptr != E_rule.data() + E_rule.size() ||
      !(c > 0.0) || !std::isfinite(c)) {
    throw PreconditionError("unknown E rule '" + std::string(E_rule) +
                            "' (expected log2, sqrtlog or a positive multiplier)");
  }
  return c * l;
}

std::vector<VerificationReport> conjecture2_scan(
    const PrimeBitmap& pb, std::span<const std::uint64_t> x_grid,
    std::string_view E_rule, const Thresholds& /*thresholds*/) {
  std::vector<std::uint64_t> grid(x_grid.begin(), x_grid.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<VerificationReport> out;
  out.reserve(grid.size());
  for (const auto x : grid) {
    require_x(x, "conjecture2_scan");
    const double E = scan_length(E_rule, x);
    const auto F = static_cast<std::uint64_t>(std::floor(E));
    if (F < 1) {
      throw PreconditionError("conjecture2_scan: floor(E) < 1 at x = " + str(x));
    }
    require_limit(pb, x + 2 * F, "conjecture2_scan");

    VerificationReport r;
    r.statement_id = StatementId::kConj2Point;
    r.x = x;
    r.params.set("E_rule", std::string(E_rule));
    r.params.set("E", E);
    r.params.set("floor_E", F);
    r.lhs = weighted_short_sum(pb, x, F);
    r.rhs = pnt_pair_density(x);
    fill_ratio_margin(r);
    r.pass = true;
    r.notes = "exploration only; no pass criterion";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace hlav
