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

// Job files in, reports out. Reports are JSON with "schema": "logchart/1";
// polynomials are written in the notation parse_poly_* reads back.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "logchart/chart.hpp"
#include "logchart/demos.hpp"

namespace logchart {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "logchart/1";

const std::vector<std::string>& job_commands();

struct RunCaps {
  CertificateCaps certificate;
  NormalizationCaps normalization;
  SearchCaps search;
  std::uint64_t seed = 72;
};

struct JobSpec {
  std::string command;
  Json payload;
  RunCaps caps;
};

/// Validates the job against the command's schema; unknown fields, wrong
/// types and a mismatched "command" field are ParseError.
JobSpec parse_job(const std::string& command, const Json& job);
JobSpec parse_job_text(const std::string& command, std::string_view text);

// "n_max=3,degree_cap=8"; same keys as the job's "caps" object.
void apply_caps_overrides(RunCaps& caps, std::string_view overrides);

// 0 success, 1 certificate or domain failure, 2 parse error, 3 budget or
// search cap exceeded.
int exit_code_for(ErrorCode code);

struct RunOutcome {
  Json report;
  int exit_code = 0;
  std::string summary;  // one human-readable line per fact
};

/// Never throws library errors: they become {"status": "error"} reports.
RunOutcome run_job(const JobSpec& job);

Json poly_json(const Poly<Rat>& f, const VarSet& vars);
Json presentation_json(const QuotientPresentation<Rat>& pres);
Json certificate_json(const EtaleCertificate& cert, const QuotientPresentation<Rat>& pres);
Json verdict_json(const FinitenessVerdict& v);
Json trace_json(const NormalizationTrace<Rat>& trace, const VarSet& vars);
Json pipeline_json(const PipelineResult& r);

}  // namespace logchart
