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

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hlav/report.hpp"

namespace hlav::cli {

enum ExitCode : int {
  kOk = 0,
  kFailedCheck = 1,
  kUsage = 2,
  kIo = 3,
};

// Runs one invocation. `args` excludes the program name. Normal output goes
// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Writes reports as CSV (header + rows) or JSON lines.
void emit_report(std::span<const VerificationReport> reports,
                 ReportFormat format, std::ostream& out);

}  // namespace hlav::cli
