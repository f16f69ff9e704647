#include <doctest.h>

#include <cmath>

#include "singrec/asymptotic.hpp"
#include "singrec/series.hpp"

using namespace singrec;

namespace {

// f = log(1 - z/z1) + m log(1 - z/z2): c_0 = 0, c_n = -(z1^-n + m z2^-n)/n.
CoefficientSeries two_log_series(double z1, double m, double lambda, int N) {
  const double z2 = z1 / lambda;
  CoefficientSeries c;
  c.coeff.emplace_back(0.0, 0.0);
  for (int n = 1; n <= N; ++n)
    c.coeff.emplace_back(-(std::pow(z1, -n) + m * std::pow(z2, -n)) / n, 0.0);
  return c;
}

RatioSequence two_log_ratios(double lambda, int N) {
  // closed form: R_n = n/(n+1) Q_n / z1, Q_n = (1 + 2 lam^{n+1})/(1 + 2 lam^n)
  RatioSequence rs;
  rs.R.assign(N, std::nullopt);
  rs.D.assign(N - 1, std::nullopt);
  for (int n = 1; n < N; ++n) {
    const double Q = (1.0 + 2.0 * std::pow(lambda, n + 1)) /
                     (1.0 + 2.0 * std::pow(lambda, n));
    rs.R[n] = Complex(n / ((n + 1.0) * 1.1) * Q, 0.0);
  }
  rs.start_index = 1;
  return rs;
}

}  // namespace

TEST_CASE("exact single-pole ratios give the flat line") {
  SingularityModel m;
  m.add(Singularity::algebraic(-1.0, {2.0, 0.0}, {2.0, 0.0}));
  const RatioSequence rs = compute_ratios(synthesize_series(m, 40));
  const DombSykesFit fit = domb_sykes_fit(rs, 1);
  CHECK(fit.intercept == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::abs(fit.slope0) < 1e-9);
  CHECK(fit.k_est == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(fit.z_est == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.straight);
  CHECK(fit.fit_residual < 1e-12);
}

TEST_CASE("two-log ratio fits reach the asymptote for every separation") {
  for (double lambda : {0.125, 0.4, 0.8}) {
    const RatioSequence rs = two_log_ratios(lambda, 100);
    const DombSykesFit fit = domb_sykes_fit(rs, 20);
    CHECK(std::abs(fit.intercept - 1.0 / 1.1) < 5e-4);
    CHECK(std::abs(fit.k_est) < 0.02);
    CHECK(std::abs(fit.z_est - 1.1) < 6e-4 * 1.1);
  }
}

TEST_CASE("the three separations merge at n = 50") {
  const double base = 50.0 / (51.0 * 1.1);
  for (double lambda : {0.125, 0.4, 0.8}) {
    const RatioSequence rs = two_log_ratios(lambda, 100);
    CHECK(std::abs(rs.R[50]->real() - base) < 2e-4);
  }
}

TEST_CASE("asymptotic ratio law with geometric interaction decay") {
  // R_n (n+1)/(n - k1) z1 = Q_n with |1 - Q_n| <= C lam^n, C = 2 m (1 - lam)
  for (double lambda : {0.125, 0.4, 0.8}) {
    const CoefficientSeries c = two_log_series(1.1, 2.0, lambda, 100);
    const RatioSequence rs = compute_ratios(c);
    const double C = 2.0 * 2.0 * (1.0 - lambda);
    for (int n = 5; n <= 95; ++n) {
      if (!rs.has_R(n)) continue;
      const double Q = rs.R[n]->real() * (n + 1.0) / n * 1.1;
      CHECK(std::abs(1.0 - Q) <= C * std::pow(lambda, n) + 1e-12);
    }
  }
}

TEST_CASE("branch-point oracle fit from a mid-series window") {
  SingularityModel m;
  m.add(Singularity::algebraic(0.5, {1.3, 0.0}, {2.0, 0.0}));
  const RatioSequence rs = compute_ratios(synthesize_series(m, 100));
  const DombSykesFit fit = domb_sykes_fit(rs, 10);
  CHECK(std::abs(fit.k_est - 0.5) < 1e-3);
  CHECK(std::abs(fit.z_est - 1.3) < 1e-3);
}

TEST_CASE("window selection") {
  SingularityModel m;
  m.add(Singularity::algebraic(-1.0, {2.0, 0.0}, {2.0, 0.0}));
  const RatioSequence flat = compute_ratios(synthesize_series(m, 40));
  CHECK(select_window(flat) == 1);

  const RatioSequence rs4 = two_log_ratios(0.4, 100);
  const int w4 = select_window(rs4);
  CHECK(w4 >= 12);
  CHECK(w4 <= 30);

  // slower interaction decay pushes the stable window out
  const RatioSequence rs8 = two_log_ratios(0.8, 100);
  const RatioSequence rs125 = two_log_ratios(0.125, 100);
  CHECK(select_window(rs8) > select_window(rs125));

  RatioSequence tiny;
  tiny.R.assign(8, Complex{0.5, 0.0});
  tiny.D.assign(7, Complex{1.0, 0.0});
  CHECK_THROWS_AS(select_window(tiny), Error);
}

TEST_CASE("oscillating ratios are routed away") {
  CoefficientSeries alt;
  for (int n = 0; n <= 30; ++n)
    alt.coeff.emplace_back((n % 2 ? -1.0 : 1.0) * std::pow(1.3, -n), 0.0);
  const RatioSequence rs = compute_ratios(alt);
  CHECK_THROWS_AS(domb_sykes_fit(rs, 1), Error);
}

TEST_CASE("magnitude estimates") {
  SingularityModel m;
  m.add(Singularity::algebraic(-1.0, {2.0, 0.0}, {2.0, 0.0}));
  const CoefficientSeries c = synthesize_series(m, 40);
  const MagnitudeEstimate est = estimate_magnitude(c, -1.0, 2.0);
  CHECK(std::abs(est.value - Complex(2.0, 0.0)) < 1e-10);
  CHECK(est.stable);

  // first-stage magnitude of the two-log family
  const CoefficientSeries c2 = two_log_series(1.1, 2.0, 0.4, 100);
  const MagnitudeEstimate e2 = estimate_magnitude(c2, 0.0, 1.1);
  CHECK(std::abs(e2.value - Complex(1.0, 0.0)) < 1e-2);

  // complex-magnitude oracle
  SingularityModel mc;
  mc.add(Singularity::algebraic(0.5, {1.3, 0.0}, {2.0, 1.0}));
  const CoefficientSeries cc = synthesize_series(mc, 100);
  const MagnitudeEstimate ec = estimate_magnitude(cc, 0.5, 1.3);
  CHECK(std::abs(ec.value - Complex(2.0, 1.0)) < 1e-3);
}

TEST_CASE("peeling the two-log family") {
  const CoefficientSeries c = two_log_series(1.1, 2.0, 0.4, 100);
  const auto [model, trace] = peel(c);
  REQUIRE(trace.stages.size() == 2);
  CHECK(trace.terminated_by == PeelTermination::ResidualBelowTolerance);
  CHECK(trace.stages[0].identified.is_log());
  CHECK(std::abs(trace.stages[0].identified.location - Complex(1.1, 0.0)) <
        5e-3);
  CHECK(std::abs(trace.stages[0].identified.magnitude - Complex(1.0, 0.0)) <
        2e-2);
  CHECK(trace.stages[1].identified.is_log());
  CHECK(std::abs(trace.stages[1].identified.location - Complex(2.75, 0.0)) <
        5e-3);
  CHECK(std::abs(trace.stages[1].identified.magnitude - Complex(2.0, 0.0)) <
        2e-2);
  // the recovered model resynthesizes the data
  CHECK(resynthesis_residual(model, c) < 1e-7);
  // stage residuals decrease strictly
  CHECK(trace.stages[1].residual_norm < trace.stages[0].residual_norm);
}

TEST_CASE("single-term series peels in one stage") {
  SingularityModel m;
  m.add(Singularity::algebraic(-1.0, {2.0, 0.0}, {2.0, 0.0}));
  const CoefficientSeries c = synthesize_series(m, 60);
  const auto [model, trace] = peel(c);
  CHECK(trace.stages.size() == 1);
  CHECK(trace.terminated_by == PeelTermination::ResidualBelowTolerance);
  CHECK(std::abs(model.terms[0].location - Complex(2.0, 0.0)) < 1e-8);
  CHECK(std::abs(model.terms[0].magnitude - Complex(2.0, 0.0)) < 1e-8);
}

TEST_CASE("three logarithmic stages recovered in increasing order") {
  CoefficientSeries c;
  c.coeff.emplace_back(0.0, 0.0);
  const double zs[3] = {1.2, 1.8, 2.9};
  const double Ms[3] = {1.0, 2.0, 1.0};
  for (int n = 1; n <= 200; ++n) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i) v -= Ms[i] * std::pow(zs[i], -n) / n;
    c.coeff.emplace_back(v, 0.0);
  }
  const auto [model, trace] = peel(c);
  REQUIRE(trace.stages.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(trace.stages[i].identified.is_log());
    CHECK(std::abs(trace.stages[i].identified.location - Complex(zs[i], 0.0)) <
          5e-3);
    CHECK(std::abs(trace.stages[i].identified.magnitude - Complex(Ms[i], 0.0)) <
          2e-2);
  }
  double prev = 1e300;
  for (const PeelStage& s : trace.stages) {
    CHECK(s.residual_norm < prev);
    prev = s.residual_norm;
  }
  // stage subtraction with the true parameters is exact per stage
  CoefficientSeries first_removed = c;
  for (int n = 1; n <= 200; ++n)
    first_removed.coeff[n] += Ms[0] * std::pow(zs[0], -n) / n;
  for (int n = 1; n <= 200; ++n) {
    double want = 0.0;
    for (int i = 1; i < 3; ++i) want -= Ms[i] * std::pow(zs[i], -n) / n;
    CHECK(std::abs(first_removed[n].real() - want) < 1e-12);
  }
}

TEST_CASE("complex data is rejected by the peel premise") {
  CoefficientSeries c;
  for (int n = 0; n <= 20; ++n)
    c.coeff.emplace_back(std::pow(1.5, -n), std::pow(1.4, -n));
  CHECK_THROWS_AS(peel(c), Error);
}

TEST_CASE("mixed log and pole peel") {
  CoefficientSeries c;
  c.coeff.emplace_back(0.0, 0.0);
  for (int n = 1; n <= 150; ++n)
    c.coeff.emplace_back(-2.0 * std::pow(1.3, -n) / n, 0.0);
  SingularityModel pole;
  pole.add(Singularity::algebraic(-1.0, {2.4, 0.0}, {1.5, 0.0}));
  const CoefficientSeries pc = synthesize_series(pole, 150);
  for (int n = 0; n <= 150; ++n) c.coeff[n] += pc[n];

  const auto [model, trace] = peel(c);
  REQUIRE(trace.stages.size() == 2);
  CHECK(trace.stages[0].identified.is_log());
  CHECK(std::abs(trace.stages[0].identified.location - Complex(1.3, 0.0)) < 5e-3);
  CHECK(!trace.stages[1].identified.is_log());
  CHECK(trace.stages[1].identified.order == doctest::Approx(-1.0));
  CHECK(std::abs(trace.stages[1].identified.location - Complex(2.4, 0.0)) < 5e-3);
  CHECK(resynthesis_residual(model, c) < 1e-6);
}
