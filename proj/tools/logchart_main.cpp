// Copyright 2026 The logchart Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// logchart <command> [--job f.json] [--caps k=v,...] [--seed N]
//
// Writes the JSON report to stdout and a short summary to stderr. The exit
// status follows exit_code_for; usage errors exit 2.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "logchart/report.hpp"

namespace {

std::string read_job(const std::string& path) {
  if (path.empty()) return "{}";
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) logchart::fail(logchart::ErrorCode::kParseError, "cannot open job file '" + path + "'");
    buf << in.rdbuf();
  }
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Log-smooth chart construction and verification"};
  std::string command, job_path, caps;
  std::optional<std::uint64_t> seed;
  app.add_option("command", command, "Job kind")->required()->check(CLI::IsMember(logchart::job_commands()));
  app.add_option("--job", job_path, "Job file (JSON); '-' reads stdin");
  app.add_option("--caps", caps, "Cap overrides, e.g. n_max=3,pairs=20000");
  app.add_option("--seed", seed, "Seed for randomized demos");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  logchart::RunOutcome outcome;
  try {
    logchart::JobSpec job = logchart::parse_job_text(command, read_job(job_path));
    if (!caps.empty()) logchart::apply_caps_overrides(job.caps, caps);
    if (seed) job.caps.seed = *seed;
    outcome = logchart::run_job(job);
  } catch (const logchart::Error& e) {
    outcome.report = {{"schema", logchart::kReportSchema},
                      {"command", command},
                      {"status", "error"},
                      {"error", {{"code", logchart::error_code_name(e.code())}, {"message", e.detail()}}}};
    outcome.exit_code = logchart::exit_code_for(e.code());
    outcome.summary = std::string(logchart::error_code_name(e.code())) + ": " + e.detail() + "\n";
  }
  std::cout << outcome.report.dump(2) << "\n";
  std::cerr << outcome.summary;
  return outcome.exit_code;
}
