#include <doctest.h>

#include <cmath>
#include <numbers>

#include "singrec/sign_pattern.hpp"

using namespace singrec;

namespace {
constexpr double kPi = std::numbers::pi;

CoefficientSeries cos_over_n(double alpha, int N) {
  CoefficientSeries c;
  c.coeff.emplace_back(0.0, 0.0);
  for (int n = 1; n <= N; ++n)
    c.coeff.emplace_back(std::cos(n * alpha) / n, 0.0);
  return c;
}
}  // namespace

TEST_CASE("limit cases of the run-length angle") {
  CoefficientSeries pos;
  pos.coeff.emplace_back(0.0, 0.0);
  for (int n = 1; n <= 80; ++n) pos.coeff.emplace_back(1.0 / n, 0.0);
  const SignRunProfile all_pos = sign_runs(pos);
  CHECK(all_pos.alpha == 0.0);
  CHECK(all_pos.runs.empty());

  CoefficientSeries alt;
  alt.coeff.emplace_back(0.0, 0.0);
  for (int n = 1; n <= 80; ++n)
    alt.coeff.emplace_back((n % 2 ? -1.0 : 1.0) / n, 0.0);
  const SignRunProfile pi_case = sign_runs(alt);
  CHECK(pi_case.alpha == doctest::Approx(kPi).epsilon(1e-14));
  for (int len : pi_case.runs) CHECK(len == 1);
}

TEST_CASE("interlacing pairs give a right angle") {
  // cos(n pi/2)/n vanishes at odd n; zeros close runs but the position
  // index keeps counting, so the estimates converge to pi/2 exactly
  const SignRunProfile p = sign_runs(cos_over_n(kPi / 2.0, 200));
  CHECK(p.alpha == doctest::Approx(kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("angle recovery at pi/7") {
  const SignRunProfile p = sign_runs(cos_over_n(kPi / 7.0, 2000));
  CHECK(std::abs(p.alpha - kPi / 7.0) < 5e-3);
}

TEST_CASE("alpha estimates converge within the run-count envelope") {
  for (int q : {3, 5, 8, 12}) {
    const double alpha = kPi / q;
    const SignRunProfile p = sign_runs(cos_over_n(alpha, 1500));
    REQUIRE(!p.alpha_estimates.empty());
    int total = 0;
    for (std::size_t j = 0; j < p.runs.size(); ++j) {
      total = p.run_ends[j];
      CHECK(std::abs(p.alpha_estimates[j] - alpha) <=
            kPi / total + 1e-12);
    }
  }
}

TEST_CASE("non-real input is rejected") {
  CoefficientSeries c;
  c.coeff.assign(16, Complex{1.0, 0.3});
  CHECK_THROWS_AS(sign_runs(c), Error);
}

TEST_CASE("radius premise check and rescaling") {
  CoefficientSeries c;
  c.coeff.emplace_back(0.0, 0.0);
  for (int n = 1; n <= 600; ++n)
    c.coeff.emplace_back(std::cos(n * kPi / 7.0) / n * std::pow(1.3, -n), 0.0);
  const SignRunProfile p = sign_runs(c);
  CHECK(p.radius_warning);
  CHECK(p.radius_estimate == doctest::Approx(1.0 / 1.3).epsilon(1e-2));
  const CoefficientSeries normalized = rescale_radius(c, 1.3);
  const SignRunProfile q = sign_runs(normalized);
  CHECK(!q.radius_warning);
  CHECK(std::abs(q.alpha - kPi / 7.0) < 5e-3);
}

TEST_CASE("formal logarithm examples") {
  CoefficientSeries ones;
  ones.coeff.assign(12, Complex{1.0, 0.0});
  const CoefficientSeries b = log_transform(ones);
  CHECK(std::abs(b[0]) < 1e-15);
  for (int n = 1; n < 12; ++n)
    CHECK(b[n].real() == doctest::Approx(1.0 / n).epsilon(1e-13));

  CoefficientSeries unit;
  unit.coeff.assign(8, Complex{0.0, 0.0});
  unit.coeff[0] = 1.0;
  const CoefficientSeries bz = log_transform(unit);
  for (int n = 0; n < 8; ++n) CHECK(std::abs(bz[n]) < 1e-15);

  CoefficientSeries zero_head;
  zero_head.coeff.assign(4, Complex{0.0, 0.0});
  CHECK_THROWS_AS(log_transform(zero_head), Error);
}

TEST_CASE("exp/log round trip") {
  CoefficientSeries b;
  b.coeff.emplace_back(0.3, -0.1);
  for (int n = 1; n <= 64; ++n)
    b.coeff.emplace_back(std::cos(0.9 * n) / (n + 1.0),
                         std::sin(0.4 * n) / (2.0 * n));
  const CoefficientSeries c = exp_transform(b);
  const CoefficientSeries b2 = log_transform(c);
  for (std::size_t n = 0; n < b.size(); ++n)
    CHECK(std::abs(b2[n] - b[n]) < 1e-10);
}

TEST_CASE("algebraic conjugate pair through the log transform") {
  // f = ((z - e^{ia})(z - e^{-ia}))^{-k}: log f has b_n = 2k cos(n a)/n
  const double alpha = kPi / 3.0, k = 0.5;
  const int N = 2000;
  CoefficientSeries b;
  b.coeff.emplace_back(0.0, 0.0);
  for (int n = 1; n <= N; ++n)
    b.coeff.emplace_back(2.0 * k * std::cos(n * alpha) / n, 0.0);
  const CoefficientSeries f = exp_transform(b);
  const CoefficientSeries back = log_transform(f);
  for (int n = 1; n <= N; ++n)
    CHECK(std::abs(back[n] - b[n]) < 1e-9);
  const SignRunProfile p = sign_runs(back);
  CHECK(std::abs(p.alpha - alpha) < 5e-3);
}
