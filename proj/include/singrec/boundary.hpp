#ifndef SINGREC_BOUNDARY_HPP
#define SINGREC_BOUNDARY_HPP

#include "singrec/types.hpp"

namespace singrec {

// Samples of a boundary trace on the equispaced grid
// theta_j = -pi + 2 pi j / M, j = 0..M-1. M must be even and >= 8.
struct BoundarySamples {
  std::vector<Complex> values;

  BoundarySamples() = default;
  explicit BoundarySamples(std::vector<Complex> v) : values(std::move(v)) {}
  explicit BoundarySamples(const std::vector<double>& v) {
    values.reserve(v.size());
    for (double x : v) values.emplace_back(x, 0.0);
  }

  std::size_t size() const { return values.size(); }
  static double theta(std::size_t j, std::size_t M);
  double theta(std::size_t j) const { return theta(j, values.size()); }
  bool is_real(double tol = 1e-10) const;
  void require_valid_grid() const;  // M >= 8 and even, finite values

  // Sample f on the grid.
  template <typename F>
  static BoundarySamples from_function(std::size_t M, F&& f) {
    std::vector<Complex> v(M);
    for (std::size_t j = 0; j < M; ++j) v[j] = f(theta(j, M));
    return BoundarySamples(std::move(v));
  }
};

// Boundary trace of a closed-form model at M grid points.
BoundarySamples boundary_trace(const SingularityModel& model, std::size_t M);

// Trapezoid-rule Fourier projection: c_n = (1/M) sum_j f(theta_j) e^{-i n theta_j}.
// Spectrally accurate on the periodic grid; n may be negative.
Complex fourier_coefficient(const BoundarySamples& samples, int n);

// c_0..c_N; requires N <= M/2 - 1 (anti-aliasing bound).
CoefficientSeries fourier_coefficients(const BoundarySamples& samples, int N);

// Conjugate-function map on the circle: sin n phi -> cos n theta,
// cos n phi -> -sin n theta (n >= 1). Input must be real; the mean is
// subtracted internally and the output has zero mean.
BoundarySamples circular_hilbert(const BoundarySamples& v);

// f~ = (a0 + H[v - mean v]) + i v. mean(v) survives as Im c_0.
BoundarySamples hilbert_complete(const BoundarySamples& v, double a0 = 0.0);

}  // namespace singrec

#endif
