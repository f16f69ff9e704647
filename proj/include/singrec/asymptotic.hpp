#ifndef SINGREC_ASYMPTOTIC_HPP
#define SINGREC_ASYMPTOTIC_HPP

#include "singrec/types.hpp"

namespace singrec {

// Rational extrapolant R(x) = (p0 + p1 x)/(1 + q1 x) of the ratio plot
// against x = 1/(n+1). Fit by linear least squares on
// R (1 + q1 x) = p0 + p1 x, iterated on q1 with a smoothed regressor, and
// the window start advanced until the intercept stabilizes.
struct DombSykesFit {
  double p0 = 0.0, p1 = 0.0, q1 = 0.0;
  int window_start = 1;     // first ratio order used by the final fit
  double intercept = 0.0;   // = p0, estimates 1/z1
  double slope0 = 0.0;      // = p1 - p0 q1, R'(0)
  double k_est = 0.0;       // = -1 - slope0/intercept
  double z_est = 0.0;       // = 1/intercept
  double fit_residual = 0.0;
  bool straight = false;    // q1-free fit residual within 2x of the free fit
};

struct PeelOptions {
  double residual_tol = 1e-8;       // coefficient-norm termination
  int stage_cap = 8;
  // Relative floor for usable residual slots. Below it the subtraction has
  // cancelled too many digits for the ratios to carry signal.
  double cancellation_guard = 1e-4;
  int refinement_sweeps = 2;         // per-stage cyclic re-fits
  double snap_tol = 0.05;
  double straight_final_tol = 1e-4;  // residual bound for the straight-line exit
};

enum class PeelTermination { ResidualBelowTolerance, StraightLineFinal, StageCap };

struct PeelStage {
  DombSykesFit fit;
  Singularity identified;
  double residual_norm = 0.0;  // max|c''| / max|c| after this stage
};

struct PeelTrace {
  std::vector<PeelStage> stages;
  PeelTermination terminated_by = PeelTermination::StageCap;
  double final_residual_norm = 0.0;
  std::vector<std::string> warnings;
};

// Least-squares rational fit of the ratio sequence from window_start on.
// Ratios must be real and one-signed in the window.
DombSykesFit domb_sykes_fit(const RatioSequence& ratios, int window_start);

// Smallest window start whose intercept is stable against halving the
// window; falls back to N/2.
int select_window(const RatioSequence& ratios);

struct MagnitudeEstimate {
  Complex value;
  double spread = 0.0;  // relative spread of the per-order tail estimates
  bool stable = true;   // spread <= 10%
};

// Tail estimate of the magnitude given (k, z1): median over the window of
// c_n/(gamma_n(k)(-z1)^{-n}) z1^{-k}, or -n c_n z1^n for the log kind.
MagnitudeEstimate estimate_magnitude(const CoefficientSeries& series, double k,
                                     double z1);

// Identify the nearest singularity, subtract its full series, recurse.
// Real-coefficient series only.
std::pair<SingularityModel, PeelTrace> peel(const CoefficientSeries& series,
                                            const PeelOptions& opts = {});

}  // namespace singrec

#endif
