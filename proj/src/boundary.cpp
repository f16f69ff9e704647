#include "singrec/boundary.hpp"

#include <cmath>
#include <numbers>

#include "singrec/series.hpp"

namespace singrec {

namespace {
constexpr double kPi = std::numbers::pi;
}

double BoundarySamples::theta(std::size_t j, std::size_t M) {
  return -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(M);
}

bool BoundarySamples::is_real(double tol) const {
  double scale = 0.0;
  for (const Complex& v : values) scale = std::max(scale, std::abs(v));
  for (const Complex& v : values)
    if (std::abs(v.imag()) > tol * std::max(scale, 1e-300)) return false;
  return true;
}

void BoundarySamples::require_valid_grid() const {
  if (values.size() < 8 || values.size() % 2 != 0)
    throw Error(ErrorCode::InvalidArgument,
                "boundary grid needs M >= 8 and even");
  for (const Complex& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorCode::InvalidArgument, "non-finite boundary sample");
}

BoundarySamples boundary_trace(const SingularityModel& model, std::size_t M) {
  return BoundarySamples::from_function(
      M, [&](double th) { return evaluate_model(model, std::polar(1.0, th)); });
}

Complex fourier_coefficient(const BoundarySamples& samples, int n) {
  samples.require_valid_grid();
  const std::size_t M = samples.size();
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < M; ++j) {
    const double th = BoundarySamples::theta(j, M);
    acc += samples.values[j] * std::polar(1.0, -n * th);
  }
  return acc / static_cast<double>(M);
}

CoefficientSeries fourier_coefficients(const BoundarySamples& samples, int N) {
  samples.require_valid_grid();
  const int M = static_cast<int>(samples.size());
  if (N < 0 || N > M / 2 - 1)
    throw Error(ErrorCode::AliasingBound,
                "requested order exceeds the aliasing bound N <= M/2 - 1");
  CoefficientSeries out;
  out.coeff.resize(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) out.coeff[n] = fourier_coefficient(samples, n);
  return out;
}

BoundarySamples circular_hilbert(const BoundarySamples& v) {
  v.require_valid_grid();
  if (!v.is_real())
    throw Error(ErrorCode::NotRealSeries,
                "circular Hilbert transform expects real samples");
  const std::size_t M = v.size();
  double mean = 0.0;
  for (const Complex& x : v.values) mean += x.real();
  mean /= static_cast<double>(M);

  // Fourier multiplier: U_n = i V_n for 1 <= n < M/2; Nyquist and mean drop.
  std::vector<Complex> Vn(M / 2);
  for (std::size_t n = 1; n < M / 2; ++n) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < M; ++j) {
      const double th = BoundarySamples::theta(j, M);
      acc += (v.values[j].real() - mean) *
             std::polar(1.0, -static_cast<double>(n) * th);
    }
    Vn[n] = acc / static_cast<double>(M);
  }
  std::vector<Complex> u(M);
  for (std::size_t j = 0; j < M; ++j) {
    const double th = BoundarySamples::theta(j, M);
    double uj = 0.0;
    for (std::size_t n = 1; n < M / 2; ++n) {
      const Complex term =
          Complex(0.0, 1.0) * Vn[n] * std::polar(1.0, static_cast<double>(n) * th);
      uj += 2.0 * term.real();
    }
    u[j] = Complex(uj, 0.0);
  }
  return BoundarySamples(std::move(u));
}

BoundarySamples hilbert_complete(const BoundarySamples& v, double a0) {
  const BoundarySamples u = circular_hilbert(v);
  std::vector<Complex> f(v.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    f[j] = Complex(a0 + u.values[j].real(), v.values[j].real());
  return BoundarySamples(std::move(f));
}

}  // namespace singrec
