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

#include "hlav/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "hlav/error.hpp"
#include "json.hpp"

namespace hlav {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<std::pair<StatementId, std::string_view>, 9> kNames{{
    {StatementId::kThm1Long, "THM1_LONG"},
    {StatementId::kThm1Window, "THM1_WINDOW"},
    {StatementId::kThm2Weighted, "THM2_WEIGHTED"},
    {StatementId::kCor2Unweighted, "COR2_UNWEIGHTED"},
    {StatementId::kThm3Ktuple, "THM3_KTUPLE"},
    {StatementId::kThm4Stride, "THM4_STRIDE"},
    {StatementId::kLemma1, "LEMMA1"},
    {StatementId::kLemma2, "LEMMA2"},
    {StatementId::kConj2Point, "CONJ2_POINT"},
}};

std::optional<double> as_number(const ParamValue& v) {
  if (const auto* u = std::get_if<std::uint64_t>(&v)) {
    return static_cast<double>(*u);
  }
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::nullopt;
}

bool same_double(double a, double b) {
  return a == b || (std::isnan(a) && std::isnan(b));
}

std::string format_param(const ParamValue& v) {
  if (const auto* u = std::get_if<std::uint64_t>(&v)) return std::to_string(*u);
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  return std::get<std::string>(v);
}

std::optional<double> parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

ParamValue parse_param(std::string_view s) {
  if (auto u = parse_uint(s)) return *u;
  if (auto d = parse_double(s)) return *d;
  return std::string(s);
}

double require_double(std::string_view s, std::string_view what) {
  if (auto d = parse_double(s)) return *d;
  throw FormatError("report: cannot parse " + std::string(what) + " '" +
                    std::string(s) + "'");
}

Json number_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

double json_number(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

}  // namespace

std::string_view to_string(StatementId id) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == id) return name;
  }
  return "UNKNOWN";
}

std::optional<StatementId> statement_id_from_string(std::string_view s) {
  for (const auto& [k, name] : kNames) {
    if (name == s) return k;
  }
  return std::nullopt;
}

void Params::set(std::string key, ParamValue value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

const ParamValue* Params::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::optional<double> Params::number(std::string_view key) const {
  const ParamValue* v = find(key);
  if (v == nullptr) return std::nullopt;
  return as_number(*v);
}

bool operator==(const Params& a, const Params& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto& [ka, va] = a.entries_[i];
    const auto& [kb, vb] = b.entries_[i];
    if (ka != kb) return false;
    const auto na = as_number(va);
    const auto nb = as_number(vb);
    if (na.has_value() != nb.has_value()) return false;
    if (na) {
      if (!same_double(*na, *nb)) return false;
    } else if (std::get<std::string>(va) != std::get<std::string>(vb)) {
      return false;
    }
  }
  return true;
}

void fill_ratio_margin(VerificationReport& r) {
  r.ratio = r.rhs != 0.0 ? r.lhs / r.rhs
                         : std::numeric_limits<double>::quiet_NaN();
  r.margin = r.lhs - r.rhs;
}

void judge_asymptotic(VerificationReport& r, const Thresholds& t) {
  fill_ratio_margin(r);
  r.pass = r.ratio >= t.ratio_lo && r.ratio <= t.ratio_hi;
  if (!r.notes.empty()) r.notes += "; ";
  r.notes += "pass iff ratio in [" + format_double(t.ratio_lo) + ", " +
             format_double(t.ratio_hi) + "]";
}

void judge_lower_bound(VerificationReport& r, const Thresholds& t) {
  fill_ratio_margin(r);
  r.pass = r.margin >= t.min_margin;
  if (!r.notes.empty()) r.notes += "; ";
  r.notes += "pass iff margin >= " + format_double(t.min_margin);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string_view report_csv_header() noexcept {
  return "statement_id,x,params,lhs,rhs,ratio,margin,pass,notes";
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw FormatError("csv: unterminated quoted field");
  return fields;
}

std::string to_csv_row(const VerificationReport& r) {
  std::string params;
  for (const auto& [k, v] : r.params.entries()) {
    if (!params.empty()) params += ';';
    params += k + "=" + format_param(v);
  }
  std::string row;
  row += to_string(r.statement_id);
  row += ',' + std::to_string(r.x);
  row += ',' + csv_field(params);
  row += ',' + format_double(r.lhs);
  row += ',' + format_double(r.rhs);
  row += ',' + format_double(r.ratio);
  row += ',' + format_double(r.margin);
  row += r.pass ? ",true" : ",false";
  row += ',' + csv_field(r.notes);
  return row;
}

VerificationReport parse_csv_row(std::string_view line) {
  const auto f = split_csv_record(line);
  if (f.size() != 9) {
    throw FormatError("report csv: expected 9 fields, got " +
                      std::to_string(f.size()));
  }
  VerificationReport r;
  const auto id = statement_id_from_string(f[0]);
  if (!id) throw FormatError("report csv: unknown statement_id '" + f[0] + "'");
  r.statement_id = *id;
  const auto x = parse_uint(f[1]);
  if (!x) throw FormatError("report csv: bad x '" + f[1] + "'");
  r.x = *x;
  std::string_view params = f[2];
  while (!params.empty()) {
    const auto end = params.find(';');
    const auto item = params.substr(0, end);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("report csv: param without '=': " + std::string(item));
    }
    r.params.set(std::string(item.substr(0, eq)), parse_param(item.substr(eq + 1)));
    if (end == std::string_view::npos) break;
    params.remove_prefix(end + 1);
  }
  r.lhs = require_double(f[3], "lhs");
  r.rhs = require_double(f[4], "rhs");
  r.ratio = require_double(f[5], "ratio");
  r.margin = require_double(f[6], "margin");
  if (f[7] != "true" && f[7] != "false") {
    throw FormatError("report csv: bad pass flag '" + f[7] + "'");
  }
  r.pass = f[7] == "true";
  r.notes = f[8];
  return r;
}

std::string to_json_line(const VerificationReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params.entries()) {
    std::visit(
        [&](const auto& val) {
          using T = std::decay_t<decltype(val)>;
          if constexpr (std::is_same_v<T, double>) {
            params[k] = number_json(val);
          } else {
            params[k] = val;
          }
        },
        v);
  }
  Json j;
  j["statement_id"] = std::string(to_string(r.statement_id));
  j["x"] = r.x;
  j["params"] = std::move(params);
  j["lhs"] = number_json(r.lhs);
  j["rhs"] = number_json(r.rhs);
  j["ratio"] = number_json(r.ratio);
  j["margin"] = number_json(r.margin);
  j["pass"] = r.pass;
  j["notes"] = r.notes;
  return j.dump();
}

VerificationReport parse_json_line(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report json: ") + e.what());
  }
  try {
    VerificationReport r;
    const auto id = statement_id_from_string(j.at("statement_id").get<std::string>());
    if (!id) throw FormatError("report json: unknown statement_id");
    r.statement_id = *id;
    r.x = j.at("x").get<std::uint64_t>();
    for (const auto& [k, v] : j.at("params").items()) {
      if (v.is_number_unsigned()) {
        r.params.set(k, v.get<std::uint64_t>());
      } else if (v.is_number() || v.is_null()) {
        r.params.set(k, json_number(v));
      } else {
        r.params.set(k, v.get<std::string>());
      }
    }
    r.lhs = json_number(j.at("lhs"));
    r.rhs = json_number(j.at("rhs"));
    r.ratio = json_number(j.at("ratio"));
    r.margin = json_number(j.at("margin"));
    r.pass = j.at("pass").get<bool>();
    r.notes = j.at("notes").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report json: ") + e.what());
  }
}

void write_reports(std::ostream& out, std::span<const VerificationReport> reports,
                   ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    out << report_csv_header() << '\n';
    for (const auto& r : reports) out << to_csv_row(r) << '\n';
  } else {
    for (const auto& r : reports) out << to_json_line(r) << '\n';
  }
}

}  // namespace hlav
