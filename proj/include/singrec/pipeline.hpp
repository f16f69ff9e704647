#ifndef SINGREC_PIPELINE_HPP
#define SINGREC_PIPELINE_HPP

#include "singrec/asymptotic.hpp"
#include "singrec/sign_pattern.hpp"
#include "singrec/solver_pair.hpp"
#include "singrec/solver_single.hpp"
#include "singrec/types.hpp"

namespace singrec {

struct AnalyzeOptions {
  SingleSolveOptions single;
  PairSolveOptions pair;
  PeelOptions peel_opts;
  double accept_residual = 1e-6;  // warning threshold for accepted models
};

struct StageVerdict {
  std::string stage;    // "single", "equal_order", "general_pair", "peel"
  std::string verdict;  // "accepted", "rejected:inconsistent", "rejected:error(...)"
  std::string detail;
};

struct AnalysisReport {
  int report_version = 1;
  // input digest
  std::string source;
  int coefficient_count = 0;
  bool real_coefficients = false;
  // trace and result
  std::vector<StageVerdict> pipeline;
  std::optional<SingularityModel> model;       // accepted model
  std::optional<SingularityModel> raw_model;   // pre-snapping, when distinct
  std::string accepted_stage;                  // empty when nothing accepted
  double resynthesis_residual = 0.0;
  std::vector<std::string> warnings;
  // diagnostics
  std::optional<SingleSolveDiagnostics> single_diag;
  std::optional<PairSolveResult> pair_result;
  std::optional<PeelTrace> peel_trace;
  std::optional<SignRunProfile> sign_profile;  // advisory, real input only
};

// Decision pipeline: (1) single-singularity solve, accepted on the
// consistency verdict; (2) equal-order pair; (3) general pair; (4) peeling
// (real coefficients only). Sign-run analysis runs as an advisory pass on
// real input. Deterministic.
AnalysisReport analyze(const CoefficientSeries& series,
                       const AnalyzeOptions& opts = {},
                       const std::string& source = "");

std::string report_to_json(const AnalysisReport& report);
std::string report_to_text(const AnalysisReport& report);

}  // namespace singrec

#endif
