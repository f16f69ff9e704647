#include "singrec/sign_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace singrec {

namespace {
constexpr double kPi = std::numbers::pi;
}

SignRunProfile sign_runs(const CoefficientSeries& series) {
  if (series.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "sign analysis needs terms from n = 1");
  if (!series.is_real(1e-10))
    throw Error(ErrorCode::NotRealSeries,
                "sign-pattern analysis expects real coefficients");
  const double scale = series.max_abs();
  const double zero_tol = 1e-10 * scale;

  SignRunProfile profile;
  int cur_sign = 0, cur_len = 0, cur_end = 0;
  bool any_negative = false;
  for (std::size_t n = 1; n < series.size(); ++n) {
    const double v = series[n].real();
    if (std::abs(v) <= zero_tol) {
      // the zero closes the run and belongs to neither; the index advances
      if (cur_len > 0) {
        profile.runs.push_back(cur_len);
        profile.run_ends.push_back(cur_end);
      }
      cur_sign = 0;
      cur_len = 0;
      continue;
    }
    const int s = v > 0.0 ? 1 : -1;
    if (s == -1) any_negative = true;
    if (s == cur_sign || cur_sign == 0) {
      cur_sign = s;
      ++cur_len;
      cur_end = static_cast<int>(n);
    } else {
      profile.runs.push_back(cur_len);
      profile.run_ends.push_back(cur_end);
      cur_sign = s;
      cur_len = 1;
      cur_end = static_cast<int>(n);
    }
  }
  // the final partial run is incomplete information and is excluded

  for (std::size_t j = 0; j < profile.runs.size(); ++j)
    profile.alpha_estimates.push_back((j + 1) * kPi / profile.run_ends[j]);

  if (profile.alpha_estimates.empty()) {
    if (any_negative)
      throw Error(ErrorCode::NoCompleteRun,
                  "signs never complete a run and are not all positive");
    profile.alpha = 0.0;  // all-positive limit case
  } else {
    profile.alpha = profile.alpha_estimates.back();
    const std::size_t m = profile.alpha_estimates.size();
    const std::size_t lookback = std::min<std::size_t>(m, 5);
    double lo = profile.alpha, hi = profile.alpha;
    for (std::size_t j = m - lookback; j < m; ++j) {
      lo = std::min(lo, profile.alpha_estimates[j]);
      hi = std::max(hi, profile.alpha_estimates[j]);
    }
    profile.convergence_spread = hi - lo;
  }

  // premise check: lim |a_n|^{1/n} should be 1 (tail geometric mean of
  // |a_{n+1}/a_n| over the last quartile; entries tiny relative to the
  // local tail scale are skipped so the cosine zeros do not poison it)
  const std::size_t N = series.size();
  const std::size_t q_start = std::max<std::size_t>(N - N / 4, 1);
  std::vector<double> tail_mags;
  for (std::size_t n = q_start; n < N; ++n) {
    const double a = std::abs(series[n].real());
    if (a > 0.0) tail_mags.push_back(a);
  }
  if (tail_mags.size() >= 4) {
    std::nth_element(tail_mags.begin(), tail_mags.begin() + tail_mags.size() / 2,
                     tail_mags.end());
    const double local_tol = 1e-8 * tail_mags[tail_mags.size() / 2];
    double log_sum = 0.0;
    int count = 0;
    for (std::size_t n = q_start; n + 1 < N; ++n) {
      const double a = std::abs(series[n].real());
      const double b = std::abs(series[n + 1].real());
      if (a > local_tol && b > local_tol) {
        log_sum += std::log(b / a);
        ++count;
      }
    }
    if (count > 0) {
      profile.radius_estimate = std::exp(log_sum / count);
      profile.radius_warning = std::abs(profile.radius_estimate - 1.0) > 0.1;
    }
  }
  return profile;
}

CoefficientSeries log_transform(const CoefficientSeries& series) {
  if (series.size() == 0)
    throw Error(ErrorCode::InvalidArgument, "empty series");
  const Complex c0 = series[0];
  if (std::abs(c0) < 1e-300)
    throw Error(ErrorCode::ZeroConstantTerm,
                "formal logarithm requires invertible constant term");
  CoefficientSeries b;
  b.coeff.assign(series.size(), Complex{0.0, 0.0});
  b.coeff[0] = std::log(c0);
  for (std::size_t n = 1; n < series.size(); ++n) {
    Complex s = series[n] / c0;
    for (std::size_t m = 1; m < n; ++m)
      s -= (static_cast<double>(m) / n) * b.coeff[m] * series[n - m] / c0;
    b.coeff[n] = s;
  }
  return b;
}

CoefficientSeries exp_transform(const CoefficientSeries& series) {
  if (series.size() == 0)
    throw Error(ErrorCode::InvalidArgument, "empty series");
  CoefficientSeries c;
  c.coeff.assign(series.size(), Complex{0.0, 0.0});
  c.coeff[0] = std::exp(series[0]);
  for (std::size_t n = 1; n < series.size(); ++n) {
    Complex s{0.0, 0.0};
    for (std::size_t m = 1; m <= n; ++m)
      s += (static_cast<double>(m) / n) * series[m] * c.coeff[n - m];
    c.coeff[n] = s;
  }
  return c;
}

CoefficientSeries rescale_radius(const CoefficientSeries& series, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw Error(ErrorCode::InvalidArgument, "rho must be positive");
  CoefficientSeries out = series;
  double p = 1.0;
  for (std::size_t n = 0; n < out.size(); ++n) {
    out.coeff[n] *= p;
    p *= rho;
  }
  return out;
}

}  // namespace singrec
