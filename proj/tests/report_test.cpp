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


#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "logchart/report.hpp"
#include "test_support.hpp"

using namespace logchart;
using logchart::testing::code_of;

namespace {

Json chart_job(Json monoid, Json rho, int p = 2) {
  return {{"chart", {{"monoid", std::move(monoid)}, {"rho", std::move(rho)}}}, {"model", {{"type", "mixed"}, {"p", p}}}};
}

RunOutcome run(const std::string& command, const Json& job) { return run_job(parse_job(command, job)); }

struct Cli {
  int status = -1;
  std::string out;
};

// Runs the installed binary with the job on stdin; stderr is discarded.
Cli run_cli(const std::string& args, const std::string& stdin_text) {
  std::string path = "report_test_job.json";
  FILE* f = std::fopen(path.c_str(), "w");
  REQUIRE(f != nullptr);
  std::fputs(stdin_text.c_str(), f);
  std::fclose(f);
  std::string cmd = std::string(LOGCHART_CLI) + " " + args + " --job " + path + " 2>/dev/null";
  Cli r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("job validation") {
  CHECK(code_of([] { parse_job("pipeline", {{"chart", {}}, {"extra", 1}}); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_job("nope", Json::object()); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_job("pipeline", {{"command", "certify"}}); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_job("pipeline", {{"caps", {{"n_max", "3"}}}}); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_job("pipeline", {{"caps", {{"colour", 3}}}}); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_job_text("pipeline", "{\"chart\": "); }) == ErrorCode::kParseError);

  JobSpec job = parse_job("pipeline", {{"caps", {{"n_max", 2}, {"pairs", 77}}}});
  CHECK(job.caps.certificate.n_max == 2);
  CHECK(job.caps.normalization.budget.max_pairs == 77);
  apply_caps_overrides(job.caps, "n_max=4,work=10,retry_cap=1");
  CHECK(job.caps.certificate.n_max == 4);
  CHECK(job.caps.search.work == 10);
  CHECK(job.caps.normalization.retry_cap == 1);
  CHECK(code_of([&] { apply_caps_overrides(job.caps, "n_max"); }) == ErrorCode::kParseError);
  CHECK(code_of([&] { apply_caps_overrides(job.caps, "n_max=x"); }) == ErrorCode::kParseError);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorCode::kParseError) == 2);
  CHECK(exit_code_for(ErrorCode::kBudgetExceeded) == 3);
  CHECK(exit_code_for(ErrorCode::kCapExceeded) == 3);
  CHECK(exit_code_for(ErrorCode::kNotFree) == 1);
  CHECK(exit_code_for(ErrorCode::kNotCertified) == 1);

  Json bad_chart = chart_job({{1, 0}, {0, 1}}, {0, 0});
  CHECK(run("pipeline", bad_chart).exit_code == 1);
  Json capped = chart_job({{1, 0}, {0, 1}}, {1, 1});
  capped["caps"] = {{"work", 1}};
  RunOutcome r = run("pipeline", capped);
  CHECK(r.exit_code == 3);
  CHECK(r.report["status"] == "error");
  CHECK(r.report["error"]["code"] == "CapExceeded");
  r = run("monoid-analyze", chart_job({{1, 0, 0}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}, {1, 0, 0}));
  CHECK(r.exit_code == 1);
  CHECK(r.report["error"]["code"] == "NotFree");
}

TEST_CASE("monoid report for N^2") {
  RunOutcome r = run("monoid-analyze", chart_job({{1, 0}, {0, 1}}, {1, 1}));
  REQUIRE(r.exit_code == 0);
  const Json& res = r.report["result"];
  CHECK(res["a"] == 1);
  CHECK(res["b"] == 0);
  CHECK(res["d"] == 1);
  CHECK(res["torsion"] == Json::array());
  CHECK(r.report["schema"] == kReportSchema);
}

TEST_CASE("pipeline report round-trips") {
  RunOutcome r = run("pipeline", chart_job({{1, 0}, {0, 1}}, {1, 1}));
  REQUIRE(r.exit_code == 0);
  const Json& res = r.report["result"];
  CHECK(res["verified"] == true);
  CHECK(res["f"] == Json::array({"x + y^4"}));
  CHECK(res["h"] == Json::array({"x"}));

  // Re-parse the serialized report and its polynomial strings.
  Json back = Json::parse(r.report.dump());
  CHECK(back == r.report);
  VarSet vars(back["result"]["presentation"]["vars"].get<std::vector<std::string>>());
  BigInt p(back["result"]["presentation"]["model"]["p"].get<long>());
  for (const auto& key : {"f", "h"}) {
    for (const auto& s : back["result"][key]) {
      Poly<Rat> f = parse_poly_mixed(s.get<std::string>(), vars, p);
      CHECK(to_string(f, vars) == s.get<std::string>());
    }
  }
  Poly<Rat> rel = parse_poly_mixed(back["result"]["presentation"]["ideal"][0].get<std::string>(), vars, p);
  CHECK(rel == parse_poly_mixed("x*y - p", vars, p));
}

TEST_CASE("normalize and certify jobs") {
  Json job = {{"presentation", {{"vars", {"x", "y"}}, {"ideal", {"x*y - p"}}}},
              {"model", {{"type", "mixed"}, {"p", 2}}},
              {"distinguished", {"x"}},
              {"n_base", 4}};
  RunOutcome r = run("normalize", job);
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["result"]["f"] == Json::array({"x + y^4"}));
  CHECK(r.report["result"]["power_form"] == true);

  job["distinguished"] = {"w"};
  CHECK(run("normalize", job).exit_code == 2);

  Json eq = {{"presentation", {{"vars", {"x", "y"}}, {"ideal", {"x*y - t"}}}},
             {"model", {{"type", "equichar0"}}},
             {"distinguished", {"x"}},
             {"n_base", 2}};
  r = run("normalize", eq);
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["result"]["f"] == Json::array({"x + y^2"}));

  Json cert = {{"presentation", {{"vars", {"x", "y"}}, {"ideal", {"x*y - p"}}}},
               {"model", {{"type", "mixed"}, {"p", 2}}},
               {"map", {"x"}}};
  r = run("certify", cert);
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["result"]["verified"] == true);
  CHECK(r.report["result"]["certificate"]["level"] == 1);
}

TEST_CASE("demo jobs") {
  RunOutcome r = run("demo-p1xp1", Json::object());
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["identities"].size() == 11);
  r = run("demo-prop72", {{"f", {"x", "x + y"}}, {"trials", 3}});
  CHECK(r.exit_code == 0);
  CHECK(r.report["result"]["refutation_raised"] == false);
  CHECK(r.report["result"]["cases"][0]["probe_etale"] == true);
  CHECK(r.report["result"]["cases"][1]["probe_etale"] == false);
}

TEST_CASE("command-line binary") {
  Cli c = run_cli("pipeline", R"({"chart": {"monoid": [[1,0],[0,1]], "rho": [1,1]}, "model": {"type": "mixed", "p": 2}})");
  CHECK(c.status == 0);
  CHECK(c.out.find("x + y^4") != std::string::npos);
  Json report = Json::parse(c.out);
  CHECK(report["status"] == "ok");

  CHECK(run_cli("pipeline", "{not json").status == 2);
  CHECK(run_cli("pipeline", R"({"chart": {"monoid": [[1,0],[0,1]], "rho": [1,1]}, "caps": {"work": 1}})").status == 3);
  CHECK(run_cli("pipeline --caps n_max=0", R"({"chart": {"monoid": [[1,0],[0,1]], "rho": [1,1]}})").status == 1);
  CHECK(run_cli("frobnicate", "{}").status == 2);
  c = run_cli("monoid-analyze", R"({"chart": {"monoid": [[1,0],[0,1]], "rho": [1,1]}})");
  CHECK(c.status == 0);
  CHECK(Json::parse(c.out)["result"]["a"] == 1);
}
