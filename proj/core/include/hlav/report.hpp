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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hlav {

enum class StatementId {
  kThm1Long,
  kThm1Window,
  kThm2Weighted,
  kCor2Unweighted,
  kThm3Ktuple,
  kThm4Stride,
  kLemma1,
  kLemma2,
  kConj2Point,
};

// "THM1_LONG", "THM2_WEIGHTED", ...
std::string_view to_string(StatementId id) noexcept;
std::optional<StatementId> statement_id_from_string(std::string_view s);

using ParamValue = std::variant<std::uint64_t, double, std::string>;

// Insertion-ordered key/value parameters of a report.
class Params {
 public:
  using Entry = std::pair<std::string, ParamValue>;

  void set(std::string key, ParamValue value);
  const ParamValue* find(std::string_view key) const;
  // Numeric view of a parameter; nullopt for missing or string values.
  std::optional<double> number(std::string_view key) const;

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  // Equal keys in the same order with numerically equal values.
  friend bool operator==(const Params& a, const Params& b);

 private:
  std::vector<Entry> entries_;
};

// Pass criteria. Asymptotic statements pass when ratio lies inside
// [ratio_lo, ratio_hi]; lower-bound statements pass when margin >= min_margin.
struct Thresholds {
  double ratio_lo = 0.75;
  double ratio_hi = 1.25;
  double min_margin = 0.0;
};

struct VerificationReport {
  StatementId statement_id = StatementId::kThm1Long;
  std::uint64_t x = 0;
  Params params;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;   // lhs / rhs, NaN when rhs == 0
  double margin = 0.0;  // lhs - rhs
  bool pass = false;
  std::string notes;
};

// Fills ratio and margin from lhs and rhs.
void fill_ratio_margin(VerificationReport& r);
// fill_ratio_margin, then pass := ratio within the threshold band.
void judge_asymptotic(VerificationReport& r, const Thresholds& t);
// fill_ratio_margin, then pass := margin >= t.min_margin.
void judge_lower_bound(VerificationReport& r, const Thresholds& t);

// Shortest decimal that parses back to the same double; "nan", "inf", "-inf"
// for non-finite values.
std::string format_double(double v);

enum class ReportFormat { kCsv, kJson };

// Fixed column order: statement_id,x,params,lhs,rhs,ratio,margin,pass,notes.
std::string_view report_csv_header() noexcept;
// params are written as key=value pairs joined by ';'. Fields containing a
// comma, quote or newline are quoted.
std::string to_csv_row(const VerificationReport& r);
VerificationReport parse_csv_row(std::string_view line);

// One JSON object on one line, no trailing newline.
std::string to_json_line(const VerificationReport& r);
VerificationReport parse_json_line(std::string_view line);

// CSV: header line then one row per report. JSON: one object per line.
void write_reports(std::ostream& out, std::span<const VerificationReport> reports,
                   ReportFormat format);

// Splits one CSV record into fields, honouring double-quoted fields.
std::vector<std::string> split_csv_record(std::string_view line);
// Quotes a CSV field when needed.
std::string csv_field(std::string_view field);

}  // namespace hlav
