#ifndef SINGREC_SOLVER_PAIR_HPP
#define SINGREC_SOLVER_PAIR_HPP

#include <array>

#include "singrec/types.hpp"

namespace singrec {

enum class PairRoute { EqualOrder, General };

struct GConsistencyRow {
  int n = 0;
  Complex g1, g2;
  double difference = 0.0;
};

struct PairSolveResult {
  std::array<Singularity, 2> singularities;  // ordered by |location|
  std::vector<GConsistencyRow> g_consistency;
  PairRoute route = PairRoute::General;
  double resynthesis_residual = 0.0;
  int starts_tried = 0;
  int starts_converged = 0;
  int candidates_accepted = 0;  // real cubic roots surviving verification
  std::vector<std::string> warnings;
};

struct PairSolveOptions {
  double g_tol = 1e-6;            // relative G-equality verification tolerance
  int verify_orders = 8;          // verification orders; higher ones carry no
                                  // two-singularity information in doubles
  double accept_residual = 1e-6;  // max resynthesis residual for acceptance
  double root_imag_tol = 1e-6;    // cubic roots with larger |Im| are dismissed
  int start_budget = 32;
  int newton_iteration_cap = 200;
  int damping_halvings = 20;
  double step_tol = 1e-12;
};

// Eliminates the (k, z2) term: ct_{n+1} = ((k-n)/((n+1) z2)) c_n + c_{n+1}.
// Slot 0 of the result is unused (zero); entries run from index 1.
CoefficientSeries tilde_coefficients(const CoefficientSeries& series, double k,
                                     Complex z2);

// Symmetric consistency value G_n(k, z) = -n H_n(k, z)/z with
// H_n = ((n+1) R_n z - (n-k)) / (n z - (n-1-k)/R_{n-1}); equal on the two
// singularities of a pair. For a pair at (z1, z2) of order k the common
// value is -(n-k)/(z1 z2).
Complex g_function(double k, Complex z, const RatioSequence& ratios, int n);

// Two singularities of equal order: cubic in k from the n = 1 elimination,
// then z1 z2 and z1 + z2, then the quadratic. Needs R_0..R_3 (length >= 6).
PairSolveResult solve_equal_order(const CoefficientSeries& series,
                                  const PairSolveOptions& opts = {});

// Two independent singularities: damped Newton on the four elimination
// equations at n = 1..4 with multi-start; magnitudes from the n = 0, 1
// matching equations; G-equality verification on the remaining orders.
PairSolveResult solve_general_pair(
    const CoefficientSeries& series,
    const std::optional<std::array<double, 4>>& init = std::nullopt,
    const PairSolveOptions& opts = {});

}  // namespace singrec

#endif
