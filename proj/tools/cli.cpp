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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "hlav/averages.hpp"
#include "hlav/correlation.hpp"
#include "hlav/error.hpp"
#include "hlav/parallel.hpp"
#include "hlav/sieve.hpp"
#include "hlav/singular.hpp"
#include "hlav/store.hpp"
#include "json.hpp"

namespace hlav::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string format = "csv";
  std::string cache_dir;
  unsigned threads = 0;
  std::string ratio_band;
  double require_margin = 0.0;
  std::string limit;
  std::string prime_bound = "1000000";
  bool no_cache = false;
  bool record = false;
};

// Raw flag text; parsed and validated before any computation.
struct Flags {
  std::string x, lo, max_shift, shifts, out, y, E, k, statement, theta, h, C,
      m, B, x_grid, E_rule = "log2", shift, tuple;
  bool weighted = false;
};

std::uint64_t parse_natural(std::string_view flag, const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  if (auto [p, ec] = std::from_chars(text.data(), end, v);
      ec == std::errc{} && p == end && !text.empty()) {
    return v;
  }
  // Scientific notation such as 1e6, when it denotes an exact integer.
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(text.data(), end, d);
      ec == std::errc{} && p == end && d >= 0.0 && d < 9.0e15 &&
      std::floor(d) == d) {
    return static_cast<std::uint64_t>(d);
  }
  throw UsageError("--" + std::string(flag) + ": expected a natural number, got '" +
                   text + "'");
}

double parse_real(std::string_view flag, const std::string& text) {
  double d = 0.0;
  const char* end = text.data() + text.size();
  if (auto [p, ec] = std::from_chars(text.data(), end, d);
      ec == std::errc{} && p == end && std::isfinite(d)) {
    return d;
  }
  throw UsageError("--" + std::string(flag) + ": expected a real number, got '" +
                   text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::uint64_t> parse_naturals(std::string_view flag,
                                          const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_natural(flag, item));
  return out;
}

template <class T>
T require(const std::string& text, std::string_view flag,
          T (*parse)(std::string_view, const std::string&)) {
  if (text.empty()) throw UsageError("missing required flag --" + std::string(flag));
  return parse(flag, text);
}

std::uint64_t natural_flag(const std::string& text, std::string_view flag) {
  return require<std::uint64_t>(text, flag, parse_natural);
}

double real_flag(const std::string& text, std::string_view flag) {
  return require<double>(text, flag, parse_real);
}

double ln(std::uint64_t x) { return std::log(static_cast<double>(x)); }

double pair_density(std::uint64_t x) {
  const double l = ln(x);
  return static_cast<double>(x) / (l * l);
}

class Context {
 public:
  Context(const GlobalOptions& g, std::ostream& out, std::ostream& err)
      : g_(g), out_(out), err_(err) {
    if (g.format != "csv" && g.format != "json") {
      throw UsageError("--format must be csv or json");
    }
    format_ = g.format == "csv" ? ReportFormat::kCsv : ReportFormat::kJson;
    if (!g.ratio_band.empty()) {
      const auto parts = split(g.ratio_band, ',');
      if (parts.size() != 2) throw UsageError("--ratio-band expects LO,HI");
      thresholds_.ratio_lo = parse_real("ratio-band", parts[0]);
      thresholds_.ratio_hi = parse_real("ratio-band", parts[1]);
      if (thresholds_.ratio_lo > thresholds_.ratio_hi) {
        throw UsageError("--ratio-band: LO must not exceed HI");
      }
    }
    thresholds_.min_margin = g.require_margin;
    if (!g.limit.empty()) limit_override_ = parse_natural("limit", g.limit);
    prime_bound_ = parse_natural("prime-bound", g.prime_bound);
    if (prime_bound_ < 3) throw UsageError("--prime-bound must be >= 3");
    set_default_threads(g.threads);
  }

  ReportFormat format() const { return format_; }
  const Thresholds& thresholds() const { return thresholds_; }
  std::uint64_t prime_bound() const { return prime_bound_; }
  std::ostream& out() { return out_; }

  fs::path cache_dir() const {
    return resolve_cache_dir(g_.cache_dir.empty()
                                 ? std::nullopt
                                 : std::optional<fs::path>(g_.cache_dir));
  }

  // Bitmap of exactly `required` (or the --limit override), cached on disk.
  PrimeBitmap bitmap(std::uint64_t required) {
    std::uint64_t limit = std::max<std::uint64_t>(required, 1);
    if (limit_override_) {
      if (*limit_override_ < limit) {
        throw UsageError("--limit " + std::to_string(*limit_override_) +
                         " is below the required " + std::to_string(limit));
      }
      limit = *limit_override_;
    }
    SieveConfig config;
    config.parallelism = g_.threads;
    if (g_.no_cache) return build_sieve(limit, config);

    const fs::path path = bitmap_cache_path(cache_dir(), limit);
    if (fs::exists(path)) {
      try {
        PrimeBitmap pb = load_bitmap(path);
        if (pb.limit() == limit) return pb;
      } catch (const IoError& e) {
        err_ << "warning: ignoring cached bitmap: " << e.what() << '\n';
      }
    }
    PrimeBitmap pb = build_sieve(limit, config);
    try {
      save_bitmap(pb, path);
    } catch (const IoError& e) {
      err_ << "warning: could not cache bitmap: " << e.what() << '\n';
    }
    return pb;
  }

  int finish(const std::vector<VerificationReport>& reports) {
    emit_report(reports, format_, out_);
    if (g_.record) append_reports(cache_dir() / "reports.jsonl", reports);
    const bool ok = std::all_of(reports.begin(), reports.end(),
                                [](const auto& r) { return r.pass; });
    return ok ? kOk : kFailedCheck;
  }

 private:
  const GlobalOptions& g_;
  std::ostream& out_;
  std::ostream& err_;
  ReportFormat format_ = ReportFormat::kCsv;
  Thresholds thresholds_;
  std::optional<std::uint64_t> limit_override_;
  std::uint64_t prime_bound_ = 1'000'000;
};

// Tabular output shared by the non-report subcommands.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(Json row) { rows_.push_back(std::move(row)); }

  void write(ReportFormat format, std::ostream& out) const {
    if (format == ReportFormat::kJson) {
      for (const auto& r : rows_) out << r.dump() << '\n';
      return;
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      out << (i ? "," : "") << columns_[i];
    }
    out << '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        out << (i ? "," : "") << csv_field(cell(r.at(columns_[i])));
      }
      out << '\n';
    }
  }

 private:
  static std::string cell(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_null()) return "nan";
    return v.dump();
  }

  std::vector<std::string> columns_;
  std::vector<Json> rows_;
};

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string join(std::span<const std::uint64_t> v) {
  std::string s;
  for (const auto e : v) s += (s.empty() ? "" : ",") + std::to_string(e);
  return s;
}

int cmd_sieve(Context& ctx, const Flags& f, const GlobalOptions& g) {
  if (g.limit.empty()) throw UsageError("sieve: --limit is required");
  const std::uint64_t limit = parse_natural("limit", g.limit);
  if (limit == 0) throw UsageError("--limit must be >= 1");
  std::string where;
  PrimeBitmap pb;
  if (!f.out.empty()) {
    SieveConfig config;
    config.parallelism = g.threads;
    pb = build_sieve(limit, config);
    save_bitmap(pb, f.out);
    where = f.out;
  } else {
    pb = ctx.bitmap(limit);
    where = g.no_cache ? "" : bitmap_cache_path(ctx.cache_dir(), limit).string();
  }
  Table t({"limit", "prime_count", "path"});
  Json row;
  row["limit"] = pb.limit();
  row["prime_count"] = pb.prime_count(pb.limit());
  row["path"] = where;
  t.add(std::move(row));
  t.write(ctx.format(), ctx.out());
  return kOk;
}

int cmd_paircount(Context& ctx, const Flags& f) {
  const std::uint64_t x = natural_flag(f.x, "x");
  const std::uint64_t max_shift = natural_flag(f.max_shift, "max-shift");
  const std::uint64_t lo = f.lo.empty() ? 0 : parse_natural("lo", f.lo);
  if (lo >= x) throw UsageError("paircount: need --lo < --x");
  if (x < 2) throw UsageError("paircount: --x must be >= 2");
  if (max_shift < 2) throw UsageError("paircount: --max-shift must be >= 2");

  const SingularSeries series(ctx.prime_bound());
  const PrimeBitmap pb = ctx.bitmap(x + max_shift);
  const auto table = pair_counts(pb, lo, x, max_shift);
  const double l = ln(x);
  const double scale = static_cast<double>(x - lo) / (l * l);

  Table t({"shift", "count", "prediction"});
  for (std::uint64_t k = 1; k <= table.shift_terms(); ++k) {
    Json row;
    row["shift"] = 2 * k;
    row["count"] = table.at(k);
    row["prediction"] = number(series.pair_constant(k).value * scale);
    t.add(std::move(row));
  }
  t.write(ctx.format(), ctx.out());
  return kOk;
}

int cmd_tuplecount(Context& ctx, const Flags& f) {
  const std::uint64_t x = natural_flag(f.x, "x");
  if (x < 2) throw UsageError("tuplecount: --x must be >= 2");
  if (f.shifts.empty()) throw UsageError("missing required flag --shifts");
  const TupleSpec spec(parse_naturals("shifts", f.shifts));

  const SingularValue c = SingularSeries(ctx.prime_bound()).tuple_constant(spec);
  const PrimeBitmap pb = ctx.bitmap(x + spec.max_shift());
  const std::uint64_t count = tuple_count(pb, x, spec);
  const double l = ln(x);
  const double prediction =
      c.value * static_cast<double>(x) /
      std::pow(l, static_cast<double>(spec.size() + 1));

  Table t({"shifts", "count", "prediction"});
  Json row;
  row["shifts"] = join(spec.shifts());
  row["count"] = count;
  row["prediction"] = number(prediction);
  t.add(std::move(row));
  t.write(ctx.format(), ctx.out());
  return kOk;
}

int cmd_constants(Context& ctx, const Flags& f) {
  if (f.shift.empty() == f.tuple.empty()) {
    throw UsageError("constants: give exactly one of --shift or --tuple");
  }
  const SingularSeries series(ctx.prime_bound());
  std::string name;
  SingularValue v;
  if (!f.shift.empty()) {
    const std::uint64_t s = parse_natural("shift", f.shift);
    if (s == 0 || s % 2 != 0) throw UsageError("--shift must be a positive even number");
    name = "C_" + std::to_string(s);
    v = series.pair_constant(s / 2);
  } else {
    const TupleSpec spec(parse_naturals("tuple", f.tuple));
    name = "C_" + join(spec.shifts());
    v = series.tuple_constant(spec);
  }
  Table t({"name", "value", "tail_bound", "prime_bound", "exactly_zero"});
  Json row;
  row["name"] = name;
  row["value"] = number(v.value);
  row["tail_bound"] = number(v.tail_bound);
  row["prime_bound"] = v.prime_bound;
  row["exactly_zero"] = v.exactly_zero;
  t.add(std::move(row));
  t.write(ctx.format(), ctx.out());
  return kOk;
}

int cmd_gallagher(Context& ctx, const Flags& f) {
  const SingularSeries series(ctx.prime_bound());
  Table t({"statistic", "parameter", "k", "value", "limit"});
  Json row;
  if (f.weighted) {
    const double E = real_flag(f.E, "E");
    if (E < 1.0) throw UsageError("--E must be >= 1");
    row["statistic"] = "weighted";
    row["parameter"] = E;
    row["k"] = 1;
    row["value"] = number(weighted_singular_average(E, series));
    row["limit"] = 1;
  } else {
    const std::uint64_t y = natural_flag(f.y, "y");
    const std::uint64_t k = f.k.empty() ? 1 : parse_natural("k", f.k);
    if (y < 2 || y % 2 != 0) throw UsageError("--y must be even and >= 2");
    if (k < 1 || k > 2) throw UsageError("--k must be 1 or 2");
    row["statistic"] = "gallagher";
    row["parameter"] = y;
    row["k"] = k;
    row["value"] = number(ktuple_gallagher_average(y, k, series));
    row["limit"] = std::uint64_t{1} << k;
  }
  t.add(std::move(row));
  t.write(ctx.format(), ctx.out());
  return kOk;
}

// Short-interval parameters shared by thm2, cor2 and thm3.
struct ShortParams {
  double C = 1.0;
  double E = 0.0;
  std::uint64_t F = 0;
};

ShortParams short_params(const Flags& f, std::uint64_t x) {
  ShortParams p;
  if (!f.C.empty()) p.C = parse_real("C", f.C);
  if (!(p.C > 0.5)) throw UsageError("--C must be > 1/2");
  p.E = f.E.empty() ? p.C * ln(x) : parse_real("E", f.E);
  if (p.C * ln(x) > p.E) throw UsageError("--E must be >= C ln x");
  if (p.E > pair_density(x)) throw UsageError("--E must be <= x/ln^2 x");
  p.F = static_cast<std::uint64_t>(std::floor(p.E));
  if (p.F < 1) throw UsageError("floor(E) must be >= 1");
  return p;
}

double theta_flag(const Flags& f) {
  const double theta = f.theta.empty() ? 0.62 : parse_real("theta", f.theta);
  if (!(theta > 0.0 && theta < 1.0)) throw UsageError("--theta must lie in (0, 1)");
  return theta;
}

int cmd_verify(Context& ctx, const Flags& f) {
  const std::uint64_t x = natural_flag(f.x, "x");
  if (x < 2) throw UsageError("verify: --x must be >= 2");
  const std::string& s = f.statement;
  const Thresholds& t = ctx.thresholds();
  VerificationReport report;

  if (s == "thm1" || s == "thm1w") {
    const double theta = theta_flag(f);
    const std::uint64_t M = long_average_length(x, theta);
    if (M < 2) throw UsageError("floor(x^theta) must be >= 2");
    if (s == "thm1") {
      report = verify_long_average(ctx.bitmap(x + M), x, theta, t);
    } else {
      const std::uint64_t h = natural_flag(f.h, "h");
      if (h < M || h > x) throw UsageError("--h must satisfy floor(x^theta) <= h <= x");
      report = verify_window_average(ctx.bitmap(x + h + M), x, h, theta, t);
    }
  } else if (s == "thm2" || s == "cor2" || s == "thm3") {
    const ShortParams p = short_params(f, x);
    const PrimeBitmap pb = ctx.bitmap(x + 2 * p.F);
    if (s == "thm2") {
      report = verify_weighted_short(pb, x, p.C, p.E, t);
    } else if (s == "cor2") {
      report = verify_unweighted_short(pb, x, p.C, p.E, t);
    } else {
      const std::uint64_t k = f.k.empty() ? 2 : parse_natural("k", f.k);
      if (k != 2) throw UsageError("thm3 supports --k 2 only");
      report = verify_ktuple_weighted(pb, x, p.C, p.E, k, t);
    }
  } else if (s == "thm4") {
    const std::uint64_t m = natural_flag(f.m, "m");
    const std::uint64_t h = natural_flag(f.h, "h");
    if (m == 0) throw UsageError("--m must be >= 1");
    const std::uint64_t M = h / (2 * m);
    if (M < 2) throw UsageError("floor(h/(2m)) must be >= 2");
    if (static_cast<double>(h) < 2.0 * ln(x) ||
        static_cast<double>(h) > pair_density(x)) {
      throw UsageError("--h must satisfy 2 ln x <= h <= x/ln^2 x");
    }
    report = verify_stride(ctx.bitmap(x + 2 * m * M), x, m, h, t);
  } else if (s == "lemma1") {
    if (f.B.empty()) throw UsageError("missing required flag --B");
    const ShiftSet B(parse_naturals("B", f.B));
    if (static_cast<double>(B.max()) > pair_density(x)) {
      throw UsageError("--B: max(B) must be <= x/ln^2 x");
    }
    report = lemma1_margin(ctx.bitmap(x + B.max()), x, B, t);
  } else {
    throw UsageError("unknown statement '" + s + "'");
  }
  return ctx.finish({report});
}

int cmd_scan(Context& ctx, const Flags& f) {
  if (f.x_grid.empty()) throw UsageError("missing required flag --x-grid");
  const auto grid = parse_naturals("x-grid", f.x_grid);
  std::uint64_t needed = 1;
  for (const auto x : grid) {
    if (x < 2) throw UsageError("--x-grid entries must be >= 2");
    const auto F = static_cast<std::uint64_t>(std::floor(scan_length(f.E_rule, x)));
    if (F < 1) throw UsageError("floor(E) < 1 at x = " + std::to_string(x));
    needed = std::max(needed, x + 2 * F);
  }
  if (grid.empty()) return ctx.finish({});
  return ctx.finish(conjecture2_scan(ctx.bitmap(needed), grid, f.E_rule,
                                     ctx.thresholds()));
}

}  // namespace

void emit_report(std::span<const VerificationReport> reports,
                 ReportFormat format, std::ostream& out) {
  write_reports(out, reports, format);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Prime pair correlations, singular series and averaged "
               "pair-count checks",
               "hlav"};
  // --h is a flag name below, so help is --help only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1, 1);
  app.fallthrough();

  GlobalOptions g;
  Flags f;
  app.add_option("--format", g.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--cache-dir", g.cache_dir,
                 "Bitmap/report cache directory (overrides HLAV_CACHE_DIR)");
  app.add_flag("--no-cache", g.no_cache, "Do not read or write cached bitmaps");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_option("--ratio-band", g.ratio_band,
                 "Pass band LO,HI for asymptotic ratios (default 0.75,1.25)");
  app.add_option("--require-margin", g.require_margin,
                 "Minimum margin for lower-bound statements (default 0)");
  app.add_option("--limit", g.limit, "Bitmap limit (sieve target or override)");
  app.add_option("--prime-bound", g.prime_bound,
                 "Euler product truncation bound (default 1000000)");
  app.add_flag("--record", g.record, "Append reports to <cache-dir>/reports.jsonl");

  auto* sieve = app.add_subcommand("sieve", "Build and save a prime bitmap");
  sieve->add_option("--out", f.out, "Output file (default: cache)");

  auto* pairs = app.add_subcommand("paircount", "pi_{2k} counts with predictions");
  pairs->add_option("--x", f.x, "Upper end of the window")->required();
  pairs->add_option("--max-shift", f.max_shift, "Largest shift 2k")->required();
  pairs->add_option("--lo", f.lo, "Lower end of the window (exclusive)");

  auto* tuples = app.add_subcommand("tuplecount", "Prime tuple count");
  tuples->add_option("--x", f.x, "Count p <= x")->required();
  tuples->add_option("--shifts", f.shifts, "Even shifts, e.g. 2,6")->required();

  auto* consts = app.add_subcommand("constants", "Singular series constants");
  consts->add_option("--shift", f.shift, "Even shift 2k for C_{2k}");
  consts->add_option("--tuple", f.tuple, "Even shifts for a tuple constant");

  auto* gal = app.add_subcommand("gallagher", "Averages of singular series");
  gal->add_option("--y", f.y, "Average over shifts <= y");
  gal->add_flag("--weighted", f.weighted, "Triangular-weight average up to E");
  gal->add_option("--E", f.E, "Length for --weighted");
  gal->add_option("--k", f.k, "Tuple size (1 or 2)");

  auto* verify = app.add_subcommand("verify", "Check one averaged statement");
  verify->add_option("statement", f.statement, "Statement to check")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm1w", "thm2", "cor2", "thm3", "thm4",
                             "lemma1"}));
  verify->add_option("--x", f.x, "Point x")->required();
  verify->add_option("--theta", f.theta, "Exponent for M = floor(x^theta)");
  verify->add_option("--h", f.h, "Window or stride length");
  verify->add_option("--C", f.C, "Constant C > 1/2 (default 1)");
  verify->add_option("--E", f.E, "Length E (default C ln x)");
  verify->add_option("--m", f.m, "Stride m");
  verify->add_option("--k", f.k, "Tuple size for thm3 (2)");
  verify->add_option("--B", f.B, "Shift set for lemma1, e.g. 2,4");

  auto* scan = app.add_subcommand("scan", "Weighted short average over an x grid");
  scan->add_option("--x-grid", f.x_grid, "Comma separated x values, e.g. 1e4,1e5")
      ->required();
  scan->add_option("--E-rule", f.E_rule, "log2, sqrtlog or a multiplier of ln x");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Context ctx(g, out, err);
    if (*sieve) return cmd_sieve(ctx, f, g);
    if (*pairs) return cmd_paircount(ctx, f);
    if (*tuples) return cmd_tuplecount(ctx, f);
    if (*consts) return cmd_constants(ctx, f);
    if (*gal) return cmd_gallagher(ctx, f);
    if (*verify) return cmd_verify(ctx, f);
    if (*scan) return cmd_scan(ctx, f);
    err << "error: no subcommand\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace hlav::cli
