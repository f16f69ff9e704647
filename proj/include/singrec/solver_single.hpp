#ifndef SINGREC_SOLVER_SINGLE_HPP
#define SINGREC_SOLVER_SINGLE_HPP

#include "singrec/types.hpp"

namespace singrec {

struct SingleSolveOptions {
  double consistency_tol = 1e-2;  // spread threshold for the verdict
  double snap_tol = 0.05;         // parameter snapping tolerance
  double guard = 1e-12;           // denominator guard in the order formulas
  int max_orders = 64;            // cap on estimation windows
};

// Window frame for the per-order estimates. Direct reads the data as the
// series of the singular function itself; Shifted reads it as
// f = c_0 + z g(z) with g singular (robust to a leading coefficient that
// does not share the tail's structure). The solver picks the frame whose
// per-order estimates agree best.
enum class EstimateFrame { Direct, Shifted };

struct SingleSolveDiagnostics {
  std::vector<int> orders;        // window indices n (>= 1)
  std::vector<Complex> k_of_n;    // per-order key-index estimates
  std::vector<Complex> z1_of_n;   // per-order location estimates
  EstimateFrame frame = EstimateFrame::Direct;
  double spread_k = 0.0;          // max |k(n) - median|
  double spread_z = 0.0;          // max |z1(n) - median|
  bool consistent = false;
  Singularity raw;
  std::optional<Singularity> snapped;
  double resynthesis_residual = 0.0;
};

struct SingleSolve {
  Singularity singularity;  // snapped when snapping applied, else raw
  SingleSolveDiagnostics diagnostics;
};

// Single-singularity recovery: per order n, k(n) = n + (n+1)/(n+1 - (n+2) D_n),
// z1(n) = (n - k(n)) / ((n+1) R_n); point estimates are medians,
// M = c_0 / z1^k (algebraic) or c_0 / log z1 (logarithmic).
SingleSolve solve_single(const CoefficientSeries& series,
                         const SingleSolveOptions& opts = {});

// k snaps to the nearest rational p/q, q <= 4, under the quality metric
// q^2 |k - p/q| <= tol; k = 0 switches the kind to logarithmic. The
// location snaps componentwise to the 3-decimal grid when within tol.
// c0 re-derives the magnitude from the snapped parameters.
Singularity snap_parameters(const Singularity& raw, double tol, Complex c0);

struct SensitivityBound {
  int order = 0;
  double k_bound = 0.0;
  double z_bound = 0.0;
};

// First-order error bounds: central finite differences of k(n) and z1(n)
// with respect to c_n, c_{n+1}, c_{n+2}, each perturbed by +-eps |c_i|.
std::vector<SensitivityBound> sensitivity(const CoefficientSeries& series,
                                          double eps,
                                          const SingleSolveOptions& opts = {});

}  // namespace singrec

#endif
