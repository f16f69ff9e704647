#include "singrec/pipeline.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "singrec/io.hpp"
#include "singrec/series.hpp"

namespace singrec {

using nlohmann::json;

namespace {

std::string rejected_error(const Error& e) {
  return std::string("rejected:error(") + error_code_name(e.code()) + ")";
}

json complex_json(const Complex& c) {
  return json{{"re", json_number(c.real())}, {"im", json_number(c.imag())}};
}

json singularity_json(const Singularity& s) {
  json j;
  j["kind"] = s.is_log() ? "logarithmic" : "algebraic";
  if (!s.is_log()) j["k"] = json_number(s.order);
  j["location"] = complex_json(s.location);
  j["magnitude"] = complex_json(s.magnitude);
  return j;
}

json model_json(const SingularityModel& m) {
  json terms = json::array();
  for (const Singularity& s : m.terms) terms.push_back(singularity_json(s));
  return json{{"terms", terms},
              {"constant_offset", complex_json(m.constant_offset)}};
}

}  // namespace

AnalysisReport analyze(const CoefficientSeries& series,
                       const AnalyzeOptions& opts, const std::string& source) {
  AnalysisReport rep;
  rep.source = source;
  rep.coefficient_count = static_cast<int>(series.size());
  rep.real_coefficients = series.is_real(1e-10);

  auto accept = [&](const SingularityModel& model, const std::string& stage) {
    rep.model = model;
    rep.accepted_stage = stage;
    rep.resynthesis_residual = resynthesis_residual(model, series);
    if (rep.resynthesis_residual > opts.accept_residual)
      rep.warnings.push_back(
          "resynthesis residual " + format_number(rep.resynthesis_residual) +
          " exceeds the acceptance threshold " +
          format_number(opts.accept_residual));
  };

  // stage 1: single singularity
  {
    StageVerdict v{"single", "", ""};
    try {
      SingleSolve ss = solve_single(series, opts.single);
      rep.single_diag = ss.diagnostics;
      if (ss.diagnostics.consistent) {
        v.verdict = "accepted";
        SingularityModel m;
        m.add(ss.singularity);
        if (ss.diagnostics.snapped) {
          SingularityModel raw;
          raw.add(ss.diagnostics.raw);
          rep.raw_model = raw;
        }
        accept(m, "single");
      } else {
        v.verdict = "rejected:inconsistent";
        v.detail = "spread_k = " + format_number(ss.diagnostics.spread_k);
      }
    } catch (const Error& e) {
      v.verdict = rejected_error(e);
      v.detail = e.what();
    }
    rep.pipeline.push_back(v);
  }

  // stage 2: two singularities of equal order
  if (!rep.model) {
    StageVerdict v{"equal_order", "", ""};
    try {
      PairSolveResult pr = solve_equal_order(series, opts.pair);
      double gmax = 0.0;
      for (const auto& row : pr.g_consistency)
        gmax = std::max(gmax, row.difference);
      if (gmax <= opts.pair.g_tol &&
          pr.resynthesis_residual <= opts.accept_residual) {
        v.verdict = "accepted";
        rep.pair_result = pr;
        SingularityModel m;
        m.add(pr.singularities[0]);
        m.add(pr.singularities[1]);
        accept(m, "equal_order");
      } else {
        v.verdict = "rejected:inconsistent";
        v.detail = "max |G difference| = " + format_number(gmax) +
                   ", residual = " + format_number(pr.resynthesis_residual);
      }
    } catch (const Error& e) {
      v.verdict = rejected_error(e);
      v.detail = e.what();
    }
    rep.pipeline.push_back(v);
  }

  // stage 3: general pair
  if (!rep.model) {
    StageVerdict v{"general_pair", "", ""};
    try {
      PairSolveResult pr = solve_general_pair(series, std::nullopt, opts.pair);
      if (pr.resynthesis_residual <= opts.accept_residual) {
        v.verdict = "accepted";
        rep.pair_result = pr;
        SingularityModel m;
        m.add(pr.singularities[0]);
        m.add(pr.singularities[1]);
        accept(m, "general_pair");
        for (const std::string& w : pr.warnings) rep.warnings.push_back(w);
      } else {
        v.verdict = "rejected:inconsistent";
        v.detail = "residual = " + format_number(pr.resynthesis_residual);
      }
    } catch (const Error& e) {
      v.verdict = rejected_error(e);
      v.detail = e.what();
    }
    rep.pipeline.push_back(v);
  }

  // stage 4: peeling (real coefficients only)
  if (!rep.model && rep.real_coefficients) {
    StageVerdict v{"peel", "", ""};
    try {
      auto [model, trace] = peel(series, opts.peel_opts);
      rep.peel_trace = trace;
      const bool complete =
          trace.terminated_by != PeelTermination::StageCap &&
          !model.terms.empty();
      if (complete) {
        v.verdict = "accepted";
        accept(model, "peel");
        for (const std::string& w : trace.warnings) rep.warnings.push_back(w);
      } else {
        v.verdict = "rejected:inconsistent";
        v.detail = "termination = stage cap, residual norm = " +
                   format_number(trace.final_residual_norm);
      }
    } catch (const Error& e) {
      v.verdict = rejected_error(e);
      v.detail = e.what();
    }
    rep.pipeline.push_back(v);
  }

  // advisory sign-pattern pass on real data
  if (rep.real_coefficients) {
    try {
      rep.sign_profile = sign_runs(series);
    } catch (const Error&) {
      // advisory only
    }
  }
  return rep;
}

std::string report_to_json(const AnalysisReport& rep) {
  json j;
  j["report_version"] = rep.report_version;
  j["input"] = json{{"source", rep.source},
                    {"coefficient_count", rep.coefficient_count},
                    {"real_coefficients", rep.real_coefficients}};
  json stages = json::array();
  for (const StageVerdict& v : rep.pipeline) {
    json s{{"stage", v.stage}, {"verdict", v.verdict}};
    if (!v.detail.empty()) s["detail"] = v.detail;
    stages.push_back(s);
  }
  j["pipeline"] = stages;
  j["accepted_stage"] = rep.accepted_stage;
  if (rep.model) {
    j["model"] = model_json(*rep.model);
    j["resynthesis_residual"] = json_number(rep.resynthesis_residual);
  }
  if (rep.raw_model) j["raw_model"] = model_json(*rep.raw_model);
  j["warnings"] = rep.warnings;

  if (rep.single_diag) {
    const SingleSolveDiagnostics& d = *rep.single_diag;
    json orders = json::array();
    for (std::size_t i = 0; i < d.orders.size(); ++i) {
      orders.push_back(json{{"n", d.orders[i]},
                            {"k", complex_json(d.k_of_n[i])},
                            {"z1", complex_json(d.z1_of_n[i])}});
    }
    j["single"] = json{
        {"per_order", orders},
        {"frame", d.frame == EstimateFrame::Direct ? "direct" : "shifted"},
        {"spread_k", json_number(d.spread_k)},
        {"spread_z", json_number(d.spread_z)},
        {"consistent", d.consistent},
        {"raw", singularity_json(d.raw)},
        {"resynthesis_residual", json_number(d.resynthesis_residual)}};
    if (d.snapped) j["single"]["snapped"] = singularity_json(*d.snapped);
  }
  if (rep.pair_result) {
    const PairSolveResult& p = *rep.pair_result;
    json rows = json::array();
    for (const GConsistencyRow& r : p.g_consistency)
      rows.push_back(json{{"n", r.n},
                          {"g1", complex_json(r.g1)},
                          {"g2", complex_json(r.g2)},
                          {"difference", json_number(r.difference)}});
    j["pair"] = json{
        {"route", p.route == PairRoute::EqualOrder ? "equal_order" : "general"},
        {"g_consistency", rows},
        {"resynthesis_residual", json_number(p.resynthesis_residual)},
        {"starts_tried", p.starts_tried},
        {"starts_converged", p.starts_converged}};
  }
  if (rep.peel_trace) {
    const PeelTrace& t = *rep.peel_trace;
    json stages_j = json::array();
    for (const PeelStage& s : t.stages) {
      stages_j.push_back(
          json{{"identified", singularity_json(s.identified)},
               {"residual_norm", json_number(s.residual_norm)},
               {"fit", json{{"intercept", json_number(s.fit.intercept)},
                            {"slope0", json_number(s.fit.slope0)},
                            {"k_est", json_number(s.fit.k_est)},
                            {"z_est", json_number(s.fit.z_est)},
                            {"q1", json_number(s.fit.q1)},
                            {"window_start", s.fit.window_start},
                            {"straight", s.fit.straight},
                            {"fit_residual", s.fit.fit_residual}}}});
    }
    const char* term = "stage_cap";
    if (t.terminated_by == PeelTermination::ResidualBelowTolerance)
      term = "residual_below_tolerance";
    else if (t.terminated_by == PeelTermination::StraightLineFinal)
      term = "straight_line_final";
    j["peel"] = json{{"stages", stages_j},
                     {"terminated_by", term},
                     {"final_residual_norm", json_number(t.final_residual_norm)}};
  }
  if (rep.sign_profile) {
    const SignRunProfile& s = *rep.sign_profile;
    j["sign_pattern"] = json{{"runs", s.runs},
                             {"alpha", json_number(s.alpha)},
                             {"alpha_estimates_count", s.alpha_estimates.size()},
                             {"convergence_spread", json_number(s.convergence_spread)},
                             {"radius_estimate", json_number(s.radius_estimate)},
                             {"radius_warning", s.radius_warning}};
  }
  return j.dump(2);
}

std::string report_to_text(const AnalysisReport& rep) {
  std::ostringstream os;
  os << "input: " << (rep.source.empty() ? "<memory>" : rep.source) << " ("
     << rep.coefficient_count << " coefficients, "
     << (rep.real_coefficients ? "real" : "complex") << ")\n";
  for (const StageVerdict& v : rep.pipeline) {
    os << "  stage " << v.stage << ": " << v.verdict;
    if (!v.detail.empty()) os << "  [" << v.detail << "]";
    os << '\n';
  }
  if (rep.model) {
    os << "accepted at stage " << rep.accepted_stage << '\n';
    for (const Singularity& s : rep.model->terms) {
      os << "  ";
      if (s.is_log())
        os << "logarithmic";
      else
        os << "k = " << format_number(s.order);
      os << ", z = " << format_number(s.location.real());
      if (s.location.imag() != 0.0)
        os << (s.location.imag() > 0 ? " + " : " - ")
           << format_number(std::abs(s.location.imag())) << "i";
      os << ", M = " << format_number(s.magnitude.real());
      if (s.magnitude.imag() != 0.0)
        os << (s.magnitude.imag() > 0 ? " + " : " - ")
           << format_number(std::abs(s.magnitude.imag())) << "i";
      os << '\n';
    }
    if (std::abs(rep.model->constant_offset) > 0.0)
      os << "  constant offset " << format_number(rep.model->constant_offset.real())
         << (rep.model->constant_offset.imag() != 0.0 ? " (+imag)" : "") << '\n';
    os << "resynthesis residual: " << format_number(rep.resynthesis_residual)
       << '\n';
  } else {
    os << "no model accepted\n";
  }
  if (rep.sign_profile && !rep.sign_profile->alpha_estimates.empty())
    os << "sign-pattern advisory: alpha ~ "
       << format_number(rep.sign_profile->alpha) << '\n';
  for (const std::string& w : rep.warnings) os << "warning: " << w << '\n';
  return os.str();
}

}  // namespace singrec
