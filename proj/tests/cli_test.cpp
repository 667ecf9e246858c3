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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "hlav/report.hpp"

namespace hlav {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Cli, PairCountGolden) {
  const auto r = run({"--no-cache", "paircount", "--x", "30", "--max-shift", "6",
                      "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, slurp(fs::path(HLAV_GOLDEN_DIR) / "paircount_x30_m6.csv"));
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "shift,count,prediction");
}

TEST(Cli, UnknownFlag) {
  const auto r = run({"--bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpEverywhere) {
  EXPECT_EQ(run({"--help"}).code, 0);
  for (const char* sub : {"sieve", "paircount", "tuplecount", "constants",
                          "gallagher", "verify", "scan"}) {
    const auto r = run({sub, "--help"});
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find("Usage"), std::string::npos) << sub;
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"paircount", "--x", "30"}).code, 2);
  EXPECT_EQ(run({"--no-cache", "paircount", "--x", "abc", "--max-shift", "6"}).code, 2);
  EXPECT_EQ(run({"--no-cache", "paircount", "--x", "30", "--max-shift", "-6"}).code, 2);
  EXPECT_EQ(run({"verify", "thm9", "--x", "100"}).code, 2);
  EXPECT_EQ(run({"--no-cache", "verify", "thm2", "--x", "1e6", "--C", "0.4"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "constants", "--shift", "2"}).code, 2);
  EXPECT_EQ(run({"sieve"}).code, 2);
}

TEST(Cli, Thm2JsonReparses) {
  const auto r = run({"--no-cache", "verify", "thm2", "--x", "1000000", "--C", "1.0",
                      "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
  const auto rep = parse_json_line(r.out.substr(0, r.out.size() - 1));
  EXPECT_EQ(rep.statement_id, StatementId::kThm2Weighted);
  EXPECT_EQ(rep.x, 1'000'000u);
  EXPECT_GT(rep.margin, 0.0);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(to_json_line(rep) + "\n", r.out);
}

TEST(Cli, CsvAndJsonAgree) {
  const std::vector<std::string> base = {"--no-cache", "verify", "thm4", "--x",
                                         "1e6", "--m", "5", "--h", "1000"};
  auto csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  auto json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto c = run(csv_args);
  const auto j = run(json_args);
  ASSERT_EQ(c.code, 0) << c.err;
  ASSERT_EQ(j.code, 0) << j.err;
  std::istringstream lines(c.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, report_csv_header());
  const auto a = parse_csv_row(row);
  const auto b = parse_json_line(j.out.substr(0, j.out.size() - 1));
  EXPECT_EQ(a.params, b.params);
  EXPECT_EQ(a.lhs, b.lhs);
  EXPECT_EQ(a.rhs, b.rhs);
  EXPECT_EQ(a.margin, b.margin);
  EXPECT_EQ(a.notes, b.notes);
}

TEST(Cli, ThreadCountDoesNotChangeOutput) {
  for (const auto& cmd : std::vector<std::vector<std::string>>{
           {"scan", "--x-grid", "1e4,1e5,1e6"},
           {"paircount", "--x", "100000", "--max-shift", "300"},
           {"verify", "thm1", "--x", "1e6"}}) {
    std::vector<std::string> one = {"--no-cache", "--threads", "1"};
    std::vector<std::string> many = {"--no-cache", "--threads", "7"};
    one.insert(one.end(), cmd.begin(), cmd.end());
    many.insert(many.end(), cmd.begin(), cmd.end());
    const auto a = run(one);
    const auto b = run(many);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, ScanColumnIsMonotone) {
  const auto r = run({"--no-cache", "scan", "--x-grid", "1e6,1e4,1e5", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::vector<std::uint64_t> xs;
  while (std::getline(lines, line)) xs.push_back(parse_csv_row(line).x);
  EXPECT_EQ(xs, (std::vector<std::uint64_t>{10'000, 100'000, 1'000'000}));
}

TEST(Cli, FailedCheckExitsOne) {
  const auto r = run({"--no-cache", "--require-margin", "1e12", "verify", "thm2",
                      "--x", "1e6"});
  EXPECT_EQ(r.code, 1);
  const auto band = run({"--no-cache", "--ratio-band", "0.99,1.01", "verify", "thm1",
                         "--x", "1e4"});
  EXPECT_EQ(band.code, 1);
}

TEST(Cli, IoErrorExitsThree) {
  const auto dir = fs::temp_directory_path() / "hlav-cli-io";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "file") << "x";
  const auto r = run({"sieve", "--limit", "100", "--out", (dir / "file" / "p.hlpb").string()});
  EXPECT_EQ(r.code, 3);
  fs::remove_all(dir);
}

TEST(Cli, CacheIsReused) {
  const auto dir = fs::temp_directory_path() / "hlav-cli-cache";
  fs::remove_all(dir);
  const auto a = run({"--cache-dir", dir.string(), "tuplecount", "--x", "1000",
                      "--shifts", "2,6"});
  ASSERT_EQ(a.code, 0) << a.err;
  bool found = false;
  for (const auto& e : fs::directory_iterator(dir)) {
    found = found || e.path().extension() == ".hlpb";
  }
  EXPECT_TRUE(found);
  const auto b = run({"--cache-dir", dir.string(), "tuplecount", "--x", "1000",
                      "--shifts", "2,6"});
  EXPECT_EQ(a.out, b.out);
  const auto rec = run({"--cache-dir", dir.string(), "--record", "verify", "lemma1",
                        "--x", "100", "--B", "2,4"});
  EXPECT_EQ(rec.code, 0) << rec.err;
  EXPECT_TRUE(fs::exists(dir / "reports.jsonl"));
  fs::remove_all(dir);
}

TEST(Cli, ConstantsAndGallagher) {
  const auto c = run({"--prime-bound", "1e5", "constants", "--tuple", "2,4",
                      "--format", "json"});
  ASSERT_EQ(c.code, 0) << c.err;
  const auto j = nlohmann::json::parse(c.out);
  EXPECT_EQ(j.at("exactly_zero"), true);
  const auto g = run({"--prime-bound", "1e5", "gallagher", "--y", "6", "--format", "json"});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_NEAR(nlohmann::json::parse(g.out).at("value").get<double>(), 1.76043, 1e-4);
}

}  // namespace
}  // namespace hlav
