#ifndef SINGREC_SIGN_PATTERN_HPP
#define SINGREC_SIGN_PATTERN_HPP

#include "singrec/types.hpp"

namespace singrec {

struct SignRunProfile {
  std::vector<int> runs;              // complete run lengths N_1, N_2, ...
  std::vector<int> run_ends;          // index of the last entry of each run
  std::vector<double> alpha_estimates;  // j pi / run_ends[j-1]
  double alpha = 0.0;                 // final estimate in [0, pi]
  double convergence_spread = 0.0;    // spread of the last few estimates
  double radius_estimate = 1.0;       // tail estimate of lim |a_n|^{1/n}
  bool radius_warning = false;        // deviates from 1 by more than 10%
};

// Run analysis of the real coefficients a_1, a_2, ... (a_0 excluded).
// A within-tolerance zero closes the current run and belongs to neither;
// the position index still advances, so the angle estimates use the index
// of each sign change. The final partial run is excluded.
SignRunProfile sign_runs(const CoefficientSeries& series);

// Formal-power-series logarithm: b_0 = log c_0,
// b_n = c_n/c_0 - (1/n) sum_{m=1}^{n-1} m b_m c_{n-m}/c_0.
CoefficientSeries log_transform(const CoefficientSeries& series);

// Formal exponential, the inverse of log_transform:
// c_0 = exp(b_0), c_n = (1/n) sum_{m=1}^{n} m b_m c_{n-m}.
CoefficientSeries exp_transform(const CoefficientSeries& series);

// a_n -> a_n rho^n, normalizing a detected convergence radius to 1.
CoefficientSeries rescale_radius(const CoefficientSeries& series, double rho);

}  // namespace singrec

#endif
