#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "singrec/complement.hpp"
#include "singrec/series.hpp"

using namespace singrec;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("complement of a simple pole") {
  SingularityModel m;
  m.add(Singularity::algebraic(-1.0, {1.5, 0.0}, {3.0, 0.0}));
  const ComplementModel F = complement_from_model(m);
  REQUIRE(F.terms.size() == 1);
  CHECK(F.terms[0].magnitude == Complex(-3.0, 0.0));
  CHECK(F.terms[0].outer_location == Complex(1.5, 0.0));
  REQUIRE(F.interior_singularities.size() == 1);
  CHECK(std::abs(F.interior_singularities[0] - Complex(2.0 / 3.0, 0.0)) <
        1e-15);
  CHECK(!F.origin_singular);
  // F(z) = -3 (1.5 - 1/z)^{-1}
  const Complex z{0.3, 0.2};
  CHECK(std::abs(evaluate_complement(F, z) -
                 (-3.0 / (1.5 - 1.0 / z))) < 1e-14);
}

TEST_CASE("complement of a constant and of a branch-point term") {
  SingularityModel constant;
  constant.constant_offset = Complex(2.0, -1.0);
  const ComplementModel Fc = complement_from_model(constant);
  CHECK(Fc.terms.empty());
  CHECK(Fc.offset == Complex(-2.0, -1.0));
  CHECK(Fc.interior_singularities.empty());

  SingularityModel frac;
  frac.add(Singularity::algebraic(0.5, {0.0, 2.0}, {1.0, 0.0}));
  const ComplementModel Ff = complement_from_model(frac);
  CHECK(Ff.origin_singular);
  REQUIRE(Ff.interior_singularities.size() == 2);
  CHECK(std::abs(Ff.interior_singularities[0] - Complex(0.0, 0.5)) < 1e-15);

  SingularityModel lg;
  lg.add(Singularity::logarithmic({2.0, 0.0}, {1.0, 0.0}));
  CHECK_THROWS_AS(complement_from_model(lg), Error);
}

TEST_CASE("boundary relation Im F = Im f, Re F = -Re f") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> Uk(-2.5, 2.5), Ur(1.2, 4.0),
      Uph(-kPi, kPi), Um(0.2, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    SingularityModel m;
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
      double k = Uk(rng);
      if (k > -0.1 && std::abs(k - std::round(k)) < 0.1 && std::round(k) >= 0)
        k -= 0.37;
      m.add(Singularity::algebraic(
          k, std::polar(Ur(rng), Uph(rng)),
          std::polar(Um(rng), Uph(rng))));
    }
    const ComplementModel F = complement_from_model(m);
    for (int j = 0; j < 256; ++j) {
      const double th = BoundarySamples::theta(j, 256);
      const Complex fz = evaluate_model(m, std::polar(1.0, th));
      const Complex Fz = evaluate_complement(F, std::polar(1.0, th));
      CHECK(std::abs(Fz.imag() - fz.imag()) < 1e-9);
      CHECK(std::abs(Fz.real() + fz.real()) < 1e-9);
    }
  }
}

TEST_CASE("interior and exterior Cauchy integrals") {
  SingularityModel m;
  m.add(Singularity::algebraic(-1.0, {2.0, 0.0}, {2.0, 0.0}));
  const BoundarySamples trace = boundary_trace(m, 512);

  const Complex zi{0.3, 0.2};
  const Complex got = cauchy_integral(trace, zi, CauchyMode::Interior);
  CHECK(std::abs(got - evaluate_model(m, zi)) < 1e-8);

  const Complex ze{1.7, 0.0};
  CHECK(std::abs(cauchy_integral(trace, ze, CauchyMode::Exterior)) < 1e-8);

  const Complex zb = std::polar(1.0, kPi / 4.0);
  const Complex pv = cauchy_integral(trace, zb, CauchyMode::BoundaryPV);
  CHECK(std::abs(pv - evaluate_model(m, zb)) < 1e-6);
}

TEST_CASE("too-close evaluation is refused, mode regions enforced") {
  SingularityModel m;
  m.add(Singularity::algebraic(-1.0, {2.0, 0.0}, {2.0, 0.0}));
  const BoundarySamples trace = boundary_trace(m, 64);
  CHECK_THROWS_AS(cauchy_integral(trace, {0.999, 0.0}, CauchyMode::Interior),
                  Error);
  CHECK_THROWS_AS(cauchy_integral(trace, {1.7, 0.0}, CauchyMode::Interior),
                  Error);
  CHECK_THROWS_AS(cauchy_integral(trace, {0.3, 0.0}, CauchyMode::Exterior),
                  Error);
}

TEST_CASE("clockwise integrals of a zero-mean complement") {
  // zero constant term puts the complement's value at infinity to zero,
  // the premise of the clockwise interior/exterior dichotomy
  SingularityModel m;
  m.add(Singularity::algebraic(-1.0, {2.0, 0.0}, {2.0, 0.0}));
  m.add(Singularity::algebraic(-2.0, {1.6, 0.4}, {0.5, 0.3}));
  Complex c0{0.0, 0.0};
  for (const Singularity& s : m.terms)
    c0 += s.magnitude * std::pow(s.location, Complex(s.order, 0.0));
  m.constant_offset = -c0;
  const ComplementModel F = complement_from_model(m);
  const BoundarySamples ftrace = complement_trace(F, 512);

  // J^- = -J; inside it vanishes, outside it returns F(z)
  const Complex zi{0.4, -0.1};
  CHECK(std::abs(-cauchy_integral(ftrace, zi, CauchyMode::Interior)) < 1e-8);
  const Complex ze{2.2, 0.4};
  const Complex Jm = -cauchy_integral(ftrace, ze, CauchyMode::Exterior);
  CHECK(std::abs(Jm - evaluate_complement(F, ze)) < 1e-8);
}

TEST_CASE("line Hilbert demonstration") {
  const std::size_t M = 2048;
  LineGrid grid{32.0 * kPi, M};
  std::vector<double> v(M);
  for (std::size_t i = 0; i < M; ++i) v[i] = std::sin(grid.x(i));

  const std::vector<double> u = line_hilbert(grid, v, LineHilbertMode::Classical);
  const std::vector<double> uc =
      line_hilbert(grid, v, LineHilbertMode::Complement);
  for (std::size_t i = M / 4; i < 3 * M / 4; ++i) {
    CHECK(std::abs(u[i] - std::cos(grid.x(i))) < 1e-3);
    CHECK(std::abs(uc[i] + std::cos(grid.x(i))) < 1e-3);
  }

  const std::vector<double> zero(M, 0.0);
  for (double x : line_hilbert(grid, zero, LineHilbertMode::Classical))
    CHECK(std::abs(x) < 1e-14);

  LineGrid bad{0.0, M};
  CHECK_THROWS_AS(line_hilbert(bad, v, LineHilbertMode::Classical), Error);
}
