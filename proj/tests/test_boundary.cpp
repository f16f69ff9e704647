#include <doctest.h>

#include <cmath>
#include <numbers>

#include "singrec/boundary.hpp"
#include "singrec/series.hpp"

using namespace singrec;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("fourier coefficients of pure modes") {
  const auto s1 = BoundarySamples::from_function(
      16, [](double th) { return std::polar(1.0, th); });
  const CoefficientSeries c1 = fourier_coefficients(s1, 3);
  CHECK(std::abs(c1[0]) < 1e-14);
  CHECK(std::abs(c1[1] - 1.0) < 1e-14);
  CHECK(std::abs(c1[2]) < 1e-14);
  CHECK(std::abs(c1[3]) < 1e-14);

  const auto s2 = BoundarySamples::from_function(16, [](double th) {
    return Complex(2.0, 0.0) + std::polar(1.0, 2.0 * th);
  });
  const CoefficientSeries c2 = fourier_coefficients(s2, 3);
  CHECK(std::abs(c2[0] - 2.0) < 1e-14);
  CHECK(std::abs(c2[1]) < 1e-14);
  CHECK(std::abs(c2[2] - 1.0) < 1e-14);
}

TEST_CASE("quadrature reproduces pole coefficients spectrally") {
  SingularityModel m;
  m.add(Singularity::algebraic(-1.0, {2.0, 0.0}, {2.0, 0.0}));
  const BoundarySamples trace = boundary_trace(m, 256);
  const CoefficientSeries c = fourier_coefficients(trace, 20);
  for (int n = 0; n <= 20; ++n)
    CHECK(std::abs(c[n] - std::pow(2.0, -n)) < 1e-12);
}

TEST_CASE("aliasing bound and grid validation") {
  const auto s = BoundarySamples::from_function(
      16, [](double th) { return std::polar(1.0, th); });
  CHECK_THROWS_AS(fourier_coefficients(s, 8), Error);
  BoundarySamples bad;
  bad.values.assign(7, Complex{0.0, 0.0});
  CHECK_THROWS_AS(fourier_coefficients(bad, 2), Error);
}

TEST_CASE("circular Hilbert multiplier identities") {
  const std::size_t M = 256;
  const auto v = BoundarySamples::from_function(
      M, [](double th) { return Complex(std::sin(th), 0.0); });
  const BoundarySamples u = circular_hilbert(v);
  for (std::size_t j = 0; j < M; ++j)
    CHECK(u.values[j].real() ==
          doctest::Approx(std::cos(u.theta(j))).epsilon(1e-12));

  const auto zero = BoundarySamples::from_function(
      M, [](double) { return Complex(0.0, 0.0); });
  const BoundarySamples uz = circular_hilbert(zero);
  for (std::size_t j = 0; j < M; ++j) CHECK(std::abs(uz.values[j]) < 1e-14);

  // mode-by-mode: sin 3t - 0.5 cos 2t -> cos 3t + 0.5 sin 2t
  const auto mix = BoundarySamples::from_function(M, [](double th) {
    return Complex(std::sin(3 * th) - 0.5 * std::cos(2 * th), 0.0);
  });
  const BoundarySamples um = circular_hilbert(mix);
  for (std::size_t j = 0; j < M; ++j) {
    const double th = um.theta(j);
    CHECK(um.values[j].real() ==
          doctest::Approx(std::cos(3 * th) + 0.5 * std::sin(2 * th))
              .epsilon(1e-12));
  }

  CHECK_THROWS_AS(circular_hilbert(BoundarySamples::from_function(
                      M, [](double th) { return std::polar(1.0, th); })),
                  Error);
}

TEST_CASE("double application negates zero-mean input") {
  const std::size_t M = 256;
  const auto v = BoundarySamples::from_function(M, [](double th) {
    return Complex(std::sin(th) + 0.3 * std::cos(5 * th) - 0.2 * std::sin(9 * th),
                   0.0);
  });
  const BoundarySamples u2 = circular_hilbert(circular_hilbert(v));
  for (std::size_t j = 0; j < M; ++j)
    CHECK(std::abs(u2.values[j].real() + v.values[j].real()) < 1e-12);
}

TEST_CASE("hilbert completion recovers the analytic trace") {
  SingularityModel m;
  m.add(Singularity::algebraic(-1.0, {1.5, 0.0}, {3.0, 0.0}));
  const std::size_t M = 256;
  const BoundarySamples f = boundary_trace(m, M);
  std::vector<double> v(M);
  double a0 = 0.0;
  for (std::size_t j = 0; j < M; ++j) {
    v[j] = f.values[j].imag();
    a0 += f.values[j].real();
  }
  a0 /= static_cast<double>(M);
  const BoundarySamples rebuilt = hilbert_complete(BoundarySamples(v), a0);
  const CoefficientSeries direct = synthesize_series(m, 20);
  const CoefficientSeries viaq = fourier_coefficients(rebuilt, 20);
  for (int n = 0; n <= 20; ++n) CHECK(std::abs(direct[n] - viaq[n]) < 1e-8);
}

TEST_CASE("hilbert completion limit cases") {
  const std::size_t M = 64;
  const auto v = BoundarySamples::from_function(
      M, [](double th) { return Complex(std::sin(th), 0.0); });
  const BoundarySamples f = hilbert_complete(v, 0.0);
  for (std::size_t j = 0; j < M; ++j)
    CHECK(std::abs(f.values[j] - std::polar(1.0, f.theta(j))) < 1e-12);

  const auto zero = BoundarySamples::from_function(
      M, [](double) { return Complex(0.0, 0.0); });
  const BoundarySamples c7 = hilbert_complete(zero, 7.0);
  for (std::size_t j = 0; j < M; ++j)
    CHECK(std::abs(c7.values[j] - Complex(7.0, 0.0)) < 1e-14);
}

TEST_CASE("one-sided spectrum for analytic traces") {
  SingularityModel m;
  m.add(Singularity::algebraic(0.5, {1.4, 0.3}, {1.0, -2.0}));
  m.add(Singularity::logarithmic({2.5, 0.0}, {1.5, 0.0}));
  const BoundarySamples trace = boundary_trace(m, 512);
  for (int n = 1; n <= 30; ++n)
    CHECK(std::abs(fourier_coefficient(trace, -n)) < 1e-9);
}

TEST_CASE("parseval on band-limited data") {
  const std::size_t M = 128;
  const auto f = BoundarySamples::from_function(M, [](double th) {
    return Complex(1.0, 0.0) + 0.5 * std::polar(1.0, 3 * th) -
           Complex(0.0, 2.0) * std::polar(1.0, 7 * th);
  });
  const CoefficientSeries c = fourier_coefficients(f, 10);
  double sum = 0.0;
  for (int n = 0; n <= 10; ++n) sum += std::norm(c[n]);
  double mean = 0.0;
  for (const Complex& v : f.values) mean += std::norm(v);
  mean /= static_cast<double>(M);
  CHECK(sum == doctest::Approx(mean).epsilon(1e-10));
}
