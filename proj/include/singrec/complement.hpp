#ifndef SINGREC_COMPLEMENT_HPP
#define SINGREC_COMPLEMENT_HPP

#include "singrec/boundary.hpp"
#include "singrec/types.hpp"

namespace singrec {

// Companion function regular outside the contour with Im F = Im f on it:
// F(z) = -sum conj(M_j) (conj(z_j) - 1/z)^{k_j} - conj(offset).
struct ComplementModel {
  struct Term {
    Complex magnitude;       // -conj(M_j)
    Complex outer_location;  // conj(z_j)
    double order = 0.0;      // k_j
  };
  std::vector<Term> terms;
  Complex offset{0.0, 0.0};  // -conj(constant_offset)
  std::vector<Complex> interior_singularities;  // the points 1/conj(z_j)
  bool origin_singular = false;  // z = 0 joins the singular set
};

// Termwise map of an algebraic model; logarithmic terms are unsupported.
ComplementModel complement_from_model(const SingularityModel& model);

// Closed-form evaluation of F away from its interior singular set.
Complex evaluate_complement(const ComplementModel& model, Complex z);

BoundarySamples complement_trace(const ComplementModel& model, std::size_t M);

enum class CauchyMode { Interior, Exterior, BoundaryPV };

// Counter-clockwise J[f](z) = (1/2 pi i) \oint f(t)/(t - z) dt on the sample
// grid. Interior mode returns ~f(z) for |z| < 1; Exterior returns ~0 for
// |z| > 1; BoundaryPV evaluates the principal-value relation on |z| = 1
// through the Fourier route and returns ~f(z).
Complex cauchy_integral(const BoundarySamples& samples, Complex z,
                        CauchyMode mode);

enum class LineHilbertMode { Classical, Complement };

// Demonstration-scale line transform on a symmetric truncated grid
// x_i = -L + 2L i/M via periodic embedding; sin x -> cos x (Classical) or
// -cos x (Complement). Reliable on the central half of the grid.
struct LineGrid {
  double half_width = 0.0;  // L
  std::size_t size = 0;     // M
  double x(std::size_t i) const {
    return -half_width +
           2.0 * half_width * static_cast<double>(i) / static_cast<double>(size);
  }
};

std::vector<double> line_hilbert(const LineGrid& grid,
                                 const std::vector<double>& v,
                                 LineHilbertMode mode);

}  // namespace singrec

#endif
