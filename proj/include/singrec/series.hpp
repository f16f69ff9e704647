#ifndef SINGREC_SERIES_HPP
#define SINGREC_SERIES_HPP

#include "singrec/types.hpp"

namespace singrec {

// Generalized binomial coefficient gamma_n(k) = k(k-1)...(k-n+1)/n!,
// computed by the running product so negative-integer k stays finite.
double gamma_binomial(double k, int n);

// Direct problem: coefficients c_0..c_N of the model's expansion about 0.
// Algebraic term: c_n += L gamma_n(k) (-z)^{-n}, L = M z^k (principal branch).
// Logarithmic term: c_0 += M log z, c_n += -M/(n z^n) for n >= 1.
CoefficientSeries synthesize_series(const SingularityModel& model, int N);

// R_n and D_n wherever the divisors pass the zero guard
// |c_n| >= guard * max|c_m|.
RatioSequence compute_ratios(const CoefficientSeries& series,
                             double guard = 1e-13);

// Closed-form evaluation of the model at z (off branch cuts, away from the
// singular points). Cuts run along the rays {s z_j : s >= 1}.
Complex evaluate_model(const SingularityModel& model, Complex z);

// max_n |synth_n - c_n| / max_m |c_m| over the shared index range.
double resynthesis_residual(const SingularityModel& model,
                            const CoefficientSeries& series);

}  // namespace singrec

#endif
