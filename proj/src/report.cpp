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

#include "logchart/report.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace logchart {

namespace {

[[noreturn]] void bad_job(const std::string& msg) { fail(ErrorCode::kParseError, msg); }

void allow_only(const Json& obj, const std::set<std::string>& keys, const std::string& where) {
  if (!obj.is_object()) bad_job(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!keys.count(k)) bad_job("unknown field '" + k + "' in " + where);
}

const Json& required(const Json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad_job("missing field '" + key + "' in " + where);
  return *it;
}

std::int64_t as_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) bad_job(what + " must be an integer");
  return v.get<std::int64_t>();
}

std::string as_string(const Json& v, const std::string& what) {
  if (!v.is_string()) bad_job(what + " must be a string");
  return v.get<std::string>();
}

IVec as_ivec(const Json& v, const std::string& what) {
  if (!v.is_array()) bad_job(what + " must be an array of integers");
  IVec out;
  for (const auto& x : v) out.push_back(as_int(x, what + " entry"));
  return out;
}

std::vector<std::string> as_strings(const Json& v, const std::string& what) {
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) bad_job(what + " must be a string or an array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(as_string(x, what + " entry"));
  return out;
}

void set_cap(RunCaps& caps, const std::string& key, std::int64_t v) {
  if (v < 0) bad_job("cap '" + key + "' must be non-negative");
  if (key == "n_max") caps.certificate.n_max = static_cast<int>(v);
  else if (key == "degree_cap") caps.certificate.degree_cap = static_cast<long>(v);
  else if (key == "matrix_entries") caps.certificate.max_matrix_entries = static_cast<std::size_t>(v);
  else if (key == "pairs") caps.normalization.budget.max_pairs = static_cast<std::size_t>(v);
  else if (key == "max_degree") caps.normalization.budget.max_degree = v;
  else if (key == "retry_cap") caps.normalization.retry_cap = static_cast<int>(v);
  else if (key == "multiplicity") caps.search.multiplicity = v;
  else if (key == "work") caps.search.work = static_cast<std::uint64_t>(v);
  else bad_job("unknown cap '" + key + "'");
}

DvrModel parse_model(const Json& v) {
  allow_only(v, {"type", "p"}, "model");
  std::string type = as_string(required(v, "type", "model"), "model.type");
  if (type == "mixed") {
    std::int64_t p = as_int(required(v, "p", "model"), "model.p");
    if (p < 2 || p > (1 << 20)) bad_job("model.p must be a prime below 2^20");
    return DvrModel::mixed(BigInt(static_cast<long>(p)));
  }
  if (type == "equichar0") {
    if (v.contains("p")) bad_job("model.p is only meaningful for mixed models");
    return DvrModel::equichar0();
  }
  bad_job("model.type must be 'mixed' or 'equichar0'");
}

ChartData parse_chart(const Json& payload, const RunCaps& caps) {
  const Json& c = required(payload, "chart", "job");
  allow_only(c, {"monoid", "rho"}, "chart");
  const Json& gens = required(c, "monoid", "chart");
  if (!gens.is_array() || gens.empty()) bad_job("chart.monoid must be a non-empty array of generators");
  std::vector<IVec> g;
  for (const auto& x : gens) g.push_back(as_ivec(x, "chart.monoid generator"));
  const std::size_t rank = g.front().size();
  for (const auto& x : g)
    if (x.size() != rank) bad_job("chart.monoid generators must have equal length");
  IVec rho = as_ivec(required(c, "rho", "chart"), "chart.rho");
  if (rho.size() != rank) bad_job("chart.rho must have the generators' length");
  DvrModel model = payload.contains("model") ? parse_model(payload["model"]) : DvrModel::mixed(BigInt(2));
  return ChartData(AffineMonoid(rank, g), rho, model, caps.search);
}

template <class C>
QuotientPresentation<C> parse_presentation(const Json& payload, const DvrModel& model) {
  const Json& pj = required(payload, "presentation", "job");
  allow_only(pj, {"vars", "ideal", "flat"}, "presentation");
  QuotientPresentation<C> pres;
  pres.vars = VarSet(as_strings(required(pj, "vars", "presentation"), "presentation.vars"));
  pres.model = model;
  if (pj.contains("flat")) {
    if (!pj["flat"].is_boolean()) bad_job("presentation.flat must be a boolean");
    pres.flat_asserted = pj["flat"].get<bool>();
  }
  std::vector<Poly<C>> gens;
  if (pj.contains("ideal")) {
    for (const auto& s : as_strings(pj["ideal"], "presentation.ideal")) {
      if constexpr (std::is_same_v<C, Rat>) gens.push_back(parse_poly_mixed(s, pres.vars, model.residue_characteristic()));
      else gens.push_back(parse_poly_equi(s, pres.vars));
    }
  }
  pres.ideal = Ideal<C>(gens);
  return pres;
}

std::vector<Poly<Rat>> parse_map(const Json& v, const QuotientPresentation<Rat>& pres) {
  std::vector<Poly<Rat>> out;
  for (const auto& s : as_strings(v, "map"))
    out.push_back(parse_poly_mixed(s, pres.vars, pres.model.residue_characteristic()));
  return out;
}

template <class C>
Json poly_list(const std::vector<Poly<C>>& fs, const VarSet& vars) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(to_string(f, vars));
  return out;
}

Json big_list(const std::vector<BigInt>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json monoid_json(const ChartData& chart) {
  const auto& dec = chart.decomposition();
  Json out;
  out["rank"] = chart.monoid().rank();
  out["generators"] = chart.monoid().generators();
  out["rho"] = chart.rho();
  out["rho_witness"] = chart.rho_witness();
  out["torsion_order"] = to_string(dec.torsion_order());
  out["torsion"] = big_list(dec.torsion_invariants());
  out["a"] = dec.free_rank();
  out["b"] = dec.sharp_rank();
  out["d"] = dec.dimension();
  Json irr = Json::array();
  for (const auto& v : dec.sharp_irreducibles()) irr.push_back(v);
  out["sharp_irreducibles"] = irr;
  return out;
}

Json chart_map_json(const ChartData& chart, const ChartMap& map, const StructuralCheck& s, const VarSet& vars) {
  Json out;
  out["chi"] = map.lift.images;
  out["chi_witnesses"] = map.lift.witnesses;
  out["h"] = poly_list(map.h, vars);
  out["structural"] = {{"injective_with_torsion_cokernel", s.injective_with_torsion_cokernel},
                       {"torsion_invertible", s.torsion_invertible},
                       {"ok", s.ok()}};
  (void)chart;
  return out;
}

Json error_report(const std::string& command, const Error& e) {
  Json out;
  out["schema"] = kReportSchema;
  out["command"] = command;
  out["status"] = "error";
  out["error"] = {{"code", error_code_name(e.code())}, {"message", e.detail()}};
  return out;
}

Json ok_report(const std::string& command, Json result) {
  Json out;
  out["schema"] = kReportSchema;
  out["command"] = command;
  out["status"] = "ok";
  out["result"] = std::move(result);
  return out;
}

std::vector<std::size_t> distinguished_indices(const Json& v, const VarSet& vars) {
  std::vector<std::size_t> out;
  for (const auto& name : as_strings(v, "distinguished")) {
    auto i = vars.index_of(name);
    if (!i) bad_job("distinguished variable '" + name + "' is not in presentation.vars");
    out.push_back(*i);
  }
  return out;
}

template <class C>
Json normalization_json(const NormalizationResult<C>& r, const QuotientPresentation<C>& pres) {
  Json out;
  out["f"] = poly_list(r.f, pres.vars);
  Json trace;
  trace["n_base"] = r.trace.n_base;
  Json dist = Json::array();
  for (auto i : r.trace.distinguished) dist.push_back(pres.vars.name(i));
  trace["distinguished"] = dist;
  trace["retries"] = r.trace.retries;
  Json steps = Json::array();
  for (const auto& s : r.trace.steps) {
    Json sj;
    sj["eliminated"] = to_string(s.eliminated, pres.vars);
    sj["a_index"] = s.a_index;
    sj["m"] = s.m;
    sj["m_special"] = s.m_special;
    sj["m_generic"] = s.m_generic;
    sj["exponents"] = s.exponents;
    steps.push_back(sj);
  }
  trace["steps"] = steps;
  out["trace"] = trace;
  out["special_finite"] = verdict_json(r.special);
  out["generic_finite"] = verdict_json(r.generic);
  out["power_form"] = check_nth_power_form(r.trace, r.f, pres.nvars());
  return out;
}

}  // namespace

const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> kCommands = {"monoid-analyze", "chart-build", "normalize", "certify",
                                                     "pipeline",       "demo-prop72", "demo-p1xp1"};
  return kCommands;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
      return 2;
    case ErrorCode::kBudgetExceeded:
    case ErrorCode::kCapExceeded:
      return 3;
    default:
      return 1;
  }
}

JobSpec parse_job(const std::string& command, const Json& job) {
  const auto& cmds = job_commands();
  if (std::find(cmds.begin(), cmds.end(), command) == cmds.end()) bad_job("unknown command '" + command + "'");
  static const std::map<std::string, std::set<std::string>> kFields = {
      {"monoid-analyze", {"chart", "model"}},
      {"chart-build", {"chart", "model"}},
      {"pipeline", {"chart", "model"}},
      {"normalize", {"presentation", "model", "distinguished", "n_base"}},
      {"certify", {"presentation", "model", "map"}},
      {"demo-prop72", {"f", "trials"}},
      {"demo-p1xp1", {}},
  };
  std::set<std::string> allowed = kFields.at(command);
  allowed.insert({"command", "caps"});
  allow_only(job, allowed, "job");
  if (job.contains("command") && as_string(job["command"], "command") != command)
    bad_job("job is for '" + job["command"].get<std::string>() + "', not '" + command + "'");
  JobSpec spec;
  spec.command = command;
  spec.payload = job;
  if (job.contains("caps")) {
    if (!job["caps"].is_object()) bad_job("caps must be an object");
    for (const auto& [k, v] : job["caps"].items()) set_cap(spec.caps, k, as_int(v, "caps." + k));
  }
  return spec;
}

JobSpec parse_job_text(const std::string& command, std::string_view text) {
  Json job;
  try {
    job = Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad_job(std::string("malformed JSON: ") + e.what());
  }
  return parse_job(command, job);
}

void apply_caps_overrides(RunCaps& caps, std::string_view overrides) {
  std::size_t pos = 0;
  while (pos < overrides.size()) {
    std::size_t end = overrides.find(',', pos);
    if (end == std::string_view::npos) end = overrides.size();
    std::string_view item = overrides.substr(pos, end - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) bad_job("cap override '" + std::string(item) + "' is not key=value");
    std::string key(item.substr(0, eq));
    std::string_view val = item.substr(eq + 1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size()) bad_job("cap '" + key + "' needs an integer value");
    set_cap(caps, key, v);
    pos = end + 1;
  }
}

Json poly_json(const Poly<Rat>& f, const VarSet& vars) { return to_string(f, vars); }

Json presentation_json(const QuotientPresentation<Rat>& pres) {
  Json out;
  out["vars"] = pres.vars.names();
  out["ideal"] = poly_list(pres.ideal.gens, pres.vars);
  out["model"] = pres.model.is_mixed() ? Json{{"type", "mixed"}, {"p", pres.model.p_u32()}} : Json{{"type", "equichar0"}};
  out["flat"] = pres.flat_asserted;
  return out;
}

Json certificate_json(const EtaleCertificate& cert, const QuotientPresentation<Rat>& pres) {
  Json out;
  out["p"] = cert.p;
  out["level"] = cert.level;
  out["degree_bound"] = cert.degree_bound;
  out["degree_cap"] = cert.degree_cap;
  Json ws = Json::array();
  for (const auto& w : cert.witnesses) {
    Json wj;
    wj["target"] = pres.vars.name(w.target);
    wj["column_multipliers"] = poly_list(w.column_multipliers, pres.vars);
    Json im = Json::array();
    for (const auto& row : w.ideal_multipliers) im.push_back(poly_list(row, pres.vars));
    wj["ideal_multipliers"] = im;
    ws.push_back(wj);
  }
  out["witnesses"] = ws;
  return out;
}

Json verdict_json(const FinitenessVerdict& v) {
  Json powers = Json::array();
  for (const auto& e : v.pure_powers) powers.push_back(e ? Json(*e) : Json(nullptr));
  return {{"finite", v.finite}, {"pure_powers", powers}, {"basis_size", v.basis_size}};
}

Json trace_json(const NormalizationTrace<Rat>& trace, const VarSet& vars) {
  Json out;
  out["n_base"] = trace.n_base;
  Json dist = Json::array();
  for (auto i : trace.distinguished) dist.push_back(vars.name(i));
  out["distinguished"] = dist;
  out["retries"] = trace.retries;
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    Json sj;
    sj["eliminated"] = to_string(s.eliminated, vars);
    sj["a_index"] = s.a_index;
    sj["m"] = s.m;
    sj["m_special"] = s.m_special;
    sj["m_generic"] = s.m_generic;
    sj["exponents"] = s.exponents;
    steps.push_back(sj);
  }
  out["steps"] = steps;
  return out;
}

Json pipeline_json(const PipelineResult& r) {
  const auto& vars = r.presentation.vars;
  const auto& q = r.normalized;
  Json out;
  out["presentation"] = presentation_json(r.presentation);
  out["h"] = poly_list(r.map.h, vars);
  out["chi"] = r.map.lift.images;
  out["structural"] = {{"injective_with_torsion_cokernel", r.structural.injective_with_torsion_cokernel},
                       {"torsion_invertible", r.structural.torsion_invertible}};
  out["h_certificate"] = certificate_json(q.input_certificate, r.presentation);
  out["h_certificate_verified"] = r.h_check.ok;
  out["f"] = poly_list(q.f, vars);
  out["kept_input"] = q.kept_input;
  Json solved = Json::array();
  for (const auto& s : q.solved)
    solved.push_back({{"var", q.extended.vars.name(s.var)}, {"value", to_string(s.value, q.extended.vars)}});
  out["solved_coordinates"] = solved;
  out["normalized_ring"] = presentation_json(q.reduced);
  if (q.trace) out["trace"] = trace_json(*q.trace, q.reduced.vars);
  out["f_certificate"] = certificate_json(q.certificate, r.presentation);
  out["f_certificate_verified"] = r.f_check.ok;
  out["power_form"] = r.power_form;
  out["special_finite"] = verdict_json(q.special);
  out["generic_finite"] = verdict_json(q.generic);
  out["verified"] = r.verified();
  return out;
}

RunOutcome run_job(const JobSpec& job) {
  RunOutcome out;
  std::ostringstream sum;
  const Json& pl = job.payload;
  try {
    Json result;
    bool all_ok = true;
    if (job.command == "monoid-analyze") {
      ChartData chart = parse_chart(pl, job.caps);
      result = monoid_json(chart);
      sum << "monoid: a=" << chart.decomposition().free_rank() << " b=" << chart.decomposition().sharp_rank()
          << " #T=" << to_string(chart.decomposition().torsion_order()) << "\n";
    } else if (job.command == "chart-build") {
      ChartData chart = parse_chart(pl, job.caps);
      auto pres = chart_ring(chart, job.caps.normalization.budget);
      auto map = build_h(chart);
      auto s = check_h_structural(chart, map);
      result["monoid"] = monoid_json(chart);
      result["presentation"] = presentation_json(pres);
      result["map"] = chart_map_json(chart, map, s, pres.vars);
      all_ok = s.ok();
      sum << "chart ring: " << result["presentation"]["ideal"].dump() << "\n"
          << "h: " << result["map"]["h"].dump() << (s.ok() ? " (structural check passed)" : " (structural check failed)")
          << "\n";
    } else if (job.command == "pipeline") {
      ChartData chart = parse_chart(pl, job.caps);
      if (!chart.model().is_mixed()) fail(ErrorCode::kPreconditionError, "the pipeline needs a mixed model");
      auto r = kpi1_pipeline(chart, {job.caps.certificate, job.caps.normalization});
      result = pipeline_json(r);
      all_ok = r.verified();
      sum << "f = " << result["f"].dump() << " at level " << r.normalized.certificate.level << "\n"
          << "certificates " << (r.h_check.ok && r.f_check.ok ? "verified" : "FAILED") << ", fibers "
          << (r.normalized.special.finite && r.normalized.generic.finite ? "finite" : "NOT finite") << "\n";
    } else if (job.command == "normalize") {
      DvrModel model = parse_model(required(pl, "model", "job"));
      std::int64_t n_base = as_int(required(pl, "n_base", "job"), "n_base");
      if (model.is_mixed()) {
        auto pres = parse_presentation<Rat>(pl, model);
        auto r = nagatatrick(pres, distinguished_indices(required(pl, "distinguished", "job"), pres.vars), n_base,
                             job.caps.normalization);
        result = normalization_json(r, pres);
      } else {
        auto pres = parse_presentation<RatFunc>(pl, model);
        auto r = nagatatrick(pres, distinguished_indices(required(pl, "distinguished", "job"), pres.vars), n_base,
                             job.caps.normalization);
        result = normalization_json(r, pres);
      }
      all_ok = result["power_form"].get<bool>();
      sum << "f = " << result["f"].dump() << "\n";
    } else if (job.command == "certify") {
      DvrModel model = parse_model(required(pl, "model", "job"));
      auto pres = parse_presentation<Rat>(pl, model);
      auto f = parse_map(pl.contains("map") ? pl["map"] : Json::array(), pres);
      auto cert = eta_etale_certificate(pres, f, job.caps.certificate);
      auto check = verify_certificate(pres, f, cert);
      result["certificate"] = certificate_json(cert, pres);
      result["verified"] = check.ok;
      if (!check.ok) result["reason"] = check.reason;
      all_ok = check.ok;
      sum << "certified at level " << cert.level << (check.ok ? ", verified" : ", verification FAILED") << "\n";
    } else if (job.command == "demo-prop72") {
      std::vector<std::string> fs = {"x", "y", "x + y", "x + y^4", "x*y", "x^2"};
      if (pl.contains("f")) fs = as_strings(pl["f"], "f");
      int trials = pl.contains("trials") ? static_cast<int>(as_int(pl["trials"], "trials")) : 5;
      if (trials < 1) bad_job("trials must be positive");
      Json rows = Json::array();
      bool refuted = false;
      for (const auto& s : fs) {
        auto f = parse_poly_equi(s, VarSet({"x", "y"}));
        auto r = demo_prop72(f, trials, job.caps.seed);
        auto adj = matrix_identity_check(special_fiber(f, DvrModel::equichar0()));
        Json tj = Json::array();
        for (const auto& t : r.trials) tj.push_back({{"c", to_string(t.c)}, {"unit_ideal", t.unit_ideal}});
        rows.push_back({{"f", s},
                        {"trials", tj},
                        {"probe_etale", r.probe_etale},
                        {"contracts_x_component", r.contracts_x_component},
                        {"contracts_y_component", r.contracts_y_component},
                        {"refutation", r.refutation()},
                        {"adjugate_identity", adj.det_matches && adj.adjugate_identity}});
        refuted = refuted || r.refutation() || !(adj.det_matches && adj.adjugate_identity);
        sum << "f = " << s << ": probe-etale " << (r.probe_etale ? "yes" : "no") << ", contracts "
            << (r.contracts_x_component ? "{x=0} " : "") << (r.contracts_y_component ? "{y=0} " : "")
            << (r.contracts_x_component || r.contracts_y_component ? "" : "nothing ") << "\n";
      }
      result["seed"] = job.caps.seed;
      result["cases"] = rows;
      result["refutation_raised"] = refuted;
      all_ok = !refuted;
    } else if (job.command == "demo-p1xp1") {
      auto r = demo_p1xp1();
      Json ids = Json::array();
      for (const auto& id : r.identities) ids.push_back({{"name", id.name}, {"residual", id.residual}});
      result["identities"] = ids;
      result["diagonal_excluded"] = r.diagonal_excluded;
      all_ok = r.ok();
      sum << r.identities.size() << " identities, all residuals " << (r.ok() ? "0" : "NOT 0") << "\n";
    }
    out.report = ok_report(job.command, std::move(result));
    out.report["verified"] = all_ok;
    out.exit_code = all_ok ? 0 : 1;
  } catch (const Error& e) {
    out.report = error_report(job.command, e);
    out.exit_code = exit_code_for(e.code());
    sum << error_code_name(e.code()) << ": " << e.detail() << "\n";
  }
  out.summary = sum.str();
  return out;
}

}  // namespace logchart
