#include "singrec/asymptotic.hpp"

#include <algorithm>
#include <cmath>

#include "singrec/series.hpp"

namespace singrec {

namespace {

struct RatioWindow {
  std::vector<int> n;
  std::vector<double> R;
};

// Real one-signed ratios starting at window_start; throws on rotation or
// alternation (complex-pair territory).
RatioWindow real_window(const RatioSequence& rs, int window_start) {
  RatioWindow w;
  for (int n = std::max(window_start, rs.start_index);
       n < static_cast<int>(rs.R.size()); ++n) {
    if (!rs.has_R(n)) {
      if (!w.n.empty()) break;
      continue;
    }
    const Complex r = *rs.R[n];
    if (std::abs(r.imag()) > 1e-9 * std::max(1.0, std::abs(r)))
      throw Error(ErrorCode::OscillatingRatios,
                  "ratio arguments rotate; single positive real location "
                  "premise fails");
    if (!(r.real() > 0.0))
      throw Error(ErrorCode::OscillatingRatios,
                  "non-positive coefficient ratio; the positive real "
                  "location premise fails (sign-pattern territory)");
    w.n.push_back(n);
    w.R.push_back(r.real());
  }
  return w;
}

struct CoreFit {
  double p0, p1, q1, rms;
};

// q1 = 0 linear fit, the fallback when the rational regressors collapse.
std::optional<CoreFit> fit_linear(const std::vector<double>& x,
                                  const std::vector<double>& R) {
  const std::size_t m = x.size();
  if (m < 2) return std::nullopt;
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += x[i];
    sxx += x[i] * x[i];
    sy += R[i];
    sxy += x[i] * R[i];
  }
  const double det = m * sxx - sx * sx;
  if (std::abs(det) < 1e-300) return std::nullopt;
  const double p1 = (m * sxy - sx * sy) / det;
  const double p0 = (sy - p1 * sx) / m;
  double rms = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = R[i] - (p0 + p1 * x[i]);
    rms += e * e;
  }
  return CoreFit{p0, p1, 0.0, std::sqrt(rms / m)};
}

// One linear pass: regress R on [1, x, -R x]; iterate with the smoothed
// regressor so q1 settles.
std::optional<CoreFit> fit_core(const std::vector<double>& x,
                                const std::vector<double>& R) {
  const std::size_t m = x.size();
  if (m < 3) return std::nullopt;
  // data already linear in x leaves q1 unidentifiable; take the line
  const auto lin = fit_linear(x, R);
  if (lin) {
    double scale = 0.0;
    for (double v : R) scale = std::max(scale, std::abs(v));
    if (lin->rms <= 1e-13 * std::max(scale, 1e-300)) return lin;
  }
  std::vector<double> w = R;
  double p0 = 0, p1 = 0, q1 = 0;
  for (int pass = 0; pass < 2; ++pass) {
    double a[9] = {0}, b[3] = {0};
    for (std::size_t i = 0; i < m; ++i) {
      const double col[3] = {1.0, x[i], -w[i] * x[i]};
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) a[r * 3 + c] += col[r] * col[c];
        b[r] += col[r] * R[i];
      }
    }
    // 3x3 normal equations via Cramer-free elimination
    double A[9];
    std::copy(a, a + 9, A);
    double rhs[3] = {b[0], b[1], b[2]};
    bool singular = false;
    for (int col = 0; col < 3 && !singular; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r)
        if (std::abs(A[r * 3 + col]) > std::abs(A[piv * 3 + col])) piv = r;
      if (std::abs(A[piv * 3 + col]) < 1e-270) singular = true;
      if (singular) break;
      if (piv != col) {
        for (int c = 0; c < 3; ++c) std::swap(A[piv * 3 + c], A[col * 3 + c]);
        std::swap(rhs[piv], rhs[col]);
      }
      for (int r = col + 1; r < 3; ++r) {
        const double f = A[r * 3 + col] / A[col * 3 + col];
        for (int c = col; c < 3; ++c) A[r * 3 + c] -= f * A[col * 3 + c];
        rhs[r] -= f * rhs[col];
      }
    }
    if (singular) return lin;
    double sol[3];
    for (int r = 2; r >= 0; --r) {
      double s = rhs[r];
      for (int c = r + 1; c < 3; ++c) s -= A[r * 3 + c] * sol[c];
      sol[r] = s / A[r * 3 + r];
    }
    p0 = sol[0];
    p1 = sol[1];
    q1 = sol[2];
    if (!std::isfinite(p0) || !std::isfinite(p1) || !std::isfinite(q1))
      return lin;
    for (std::size_t i = 0; i < m; ++i)
      w[i] = (p0 + p1 * x[i]) / (1.0 + q1 * x[i]);
  }
  double rms = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double e = R[i] - (p0 + p1 * x[i]) / (1.0 + q1 * x[i]);
    rms += e * e;
  }
  return CoreFit{p0, p1, q1, std::sqrt(rms / m)};
}

std::optional<CoreFit> fit_from(const RatioWindow& w, int start) {
  std::vector<double> x, R;
  for (std::size_t i = 0; i < w.n.size(); ++i) {
    if (w.n[i] >= start) {
      x.push_back(1.0 / (w.n[i] + 1.0));
      R.push_back(w.R[i]);
    }
  }
  if (x.size() < 6) return std::nullopt;
  return fit_core(x, R);
}

int count_from(const RatioWindow& w, int start) {
  int c = 0;
  for (int n : w.n)
    if (n >= start) ++c;
  return c;
}

DombSykesFit finish_fit(const RatioWindow& w, int start, const CoreFit& cf) {
  DombSykesFit out;
  out.p0 = cf.p0;
  out.p1 = cf.p1;
  out.q1 = cf.q1;
  out.window_start = start;
  out.intercept = cf.p0;
  out.slope0 = cf.p1 - cf.p0 * cf.q1;
  out.k_est = -1.0 - out.slope0 / out.intercept;
  out.z_est = 1.0 / out.intercept;
  out.fit_residual = cf.rms;
  // straight test: forcing q1 = 0 must not cost more than 2x
  std::vector<double> x, R;
  for (std::size_t i = 0; i < w.n.size(); ++i)
    if (w.n[i] >= start) {
      x.push_back(1.0 / (w.n[i] + 1.0));
      R.push_back(w.R[i]);
    }
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sxx += x[i] * x[i];
    sy += R[i];
    sxy += x[i] * R[i];
  }
  const double det = m * sxx - sx * sx;
  if (std::abs(det) > 1e-300) {
    const double b1 = (m * sxy - sx * sy) / det;
    const double b0 = (sy - b1 * sx) / m;
    double rms0 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = R[i] - (b0 + b1 * x[i]);
      rms0 += e * e;
    }
    rms0 = std::sqrt(rms0 / m);
    out.straight = rms0 <= 2.0 * cf.rms || rms0 < 1e-12;
  }
  return out;
}

double gamma_abs_or_zero(double k, int n) {
  const double g = gamma_binomial(k, n);
  return std::abs(g);
}

double snap_key_index(double k, double tol) {
  double best_d = std::numeric_limits<double>::infinity();
  double best_v = k;
  for (int q = 1; q <= 4; ++q) {
    const double p = std::round(k * q);
    const double d = q * q * std::abs(k - p / q);
    if (d < best_d) {
      best_d = d;
      best_v = p / q;
    }
  }
  return best_d <= tol ? best_v : k;
}

std::vector<double> term_series(double k, double z, double M, int N) {
  std::vector<double> s(static_cast<std::size_t>(N) + 1, 0.0);
  if (k == 0.0) {
    double zp = z;
    for (int n = 1; n <= N; ++n) {
      s[n] = -M / (n * zp);
      zp *= z;
    }
  } else {
    const double L = M * std::pow(z, k);
    double p = 1.0;
    for (int n = 0; n <= N; ++n) {
      s[n] = L * gamma_binomial(k, n) * p;
      p /= -z;
    }
  }
  return s;
}

struct StageTerm {
  double k, z, M;
  DombSykesFit fit;
};

// Usable slot range of the residual: |cur_n| must clear the cancellation
// guard relative to the original coefficients, contiguously.
std::vector<int> valid_slots(const std::vector<double>& cur,
                             const std::vector<double>& orig, double guard) {
  std::vector<int> ns;
  for (int n = 1; n + 1 < static_cast<int>(cur.size()); ++n) {
    if (std::abs(cur[n]) > guard * std::abs(orig[n]) &&
        std::abs(cur[n + 1]) > guard * std::abs(orig[n + 1])) {
      ns.push_back(n);
    } else if (!ns.empty()) {
      break;
    }
  }
  return ns;
}

// Joint (z, M) tail refinement: log|c_n/gamma_n(k)| (log kind: log|n c_n|)
// is linear in n with slope -log z; exponentially accurate where the term
// dominates.
std::optional<std::pair<double, double>> refine_tail(
    const std::vector<double>& cur, double k, const std::vector<int>& ns) {
  const std::size_t take = std::max<std::size_t>(8, ns.size() / 4);
  const std::size_t lo = ns.size() > take ? ns.size() - take : 0;
  std::vector<double> xs, ys;
  for (std::size_t i = lo; i < ns.size(); ++i) {
    const int n = ns[i];
    double base;
    if (k == 0.0) {
      base = std::abs(n * cur[n]);
    } else {
      const double g = gamma_abs_or_zero(k, n);
      if (g == 0.0) continue;
      base = std::abs(cur[n]) / g;
    }
    if (base <= 0.0) continue;
    xs.push_back(n);
    ys.push_back(std::log(base));
  }
  if (xs.size() < 4) return std::nullopt;
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  const double m = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sxx += xs[i] * xs[i];
    sy += ys[i];
    sxy += xs[i] * ys[i];
  }
  const double det = m * sxx - sx * sx;
  if (std::abs(det) < 1e-300) return std::nullopt;
  const double slope = (m * sxy - sx * sy) / det;
  const double icpt = (sy - slope * sx) / m;
  const double z = std::exp(-slope);
  if (!std::isfinite(z) || !(z > 1.0)) return std::nullopt;
  const double absL = std::exp(icpt);
  const int n0 = ns[lo + (ns.size() - lo) / 2];
  double M;
  if (k == 0.0) {
    M = (cur[n0] < 0.0 ? 1.0 : -1.0) * absL;  // c_n = -M z^{-n}/n
  } else {
    const double pattern = gamma_binomial(k, n0) * std::pow(-z, -n0);
    if (pattern == 0.0) return std::nullopt;
    M = (cur[n0] / pattern > 0.0 ? 1.0 : -1.0) * absL * std::pow(z, -k);
  }
  if (!std::isfinite(M)) return std::nullopt;
  return std::make_pair(z, M);
}

// propagate_oscillation: the first stage reports the premise violation to
// the caller; later stages treat it as the end of the usable signal.
std::optional<StageTerm> fit_stage(const std::vector<double>& cur,
                                   const std::vector<double>& orig,
                                   const PeelOptions& opts,
                                   bool propagate_oscillation = false) {
  const std::vector<int> ns = valid_slots(cur, orig, opts.cancellation_guard);
  if (ns.size() < 6) return std::nullopt;
  RatioSequence rs;
  rs.R.assign(cur.size() - 1, std::nullopt);
  for (int n : ns) rs.R[n] = Complex(cur[n + 1] / cur[n], 0.0);
  rs.start_index = ns.front();
  DombSykesFit fit;
  try {
    fit = domb_sykes_fit(rs, ns.front());
  } catch (const Error&) {
    if (propagate_oscillation) throw;
    return std::nullopt;
  }
  const double k = snap_key_index(fit.k_est, opts.snap_tol);
  double z = fit.z_est;
  double M;
  const auto refined = refine_tail(cur, k, ns);
  if (refined && std::abs(refined->first - z) < 0.2 * std::abs(z)) {
    z = refined->first;
    M = refined->second;
  } else {
    CoefficientSeries tmp;
    tmp.coeff.reserve(cur.size());
    for (double v : cur) tmp.coeff.emplace_back(v, 0.0);
    M = estimate_magnitude(tmp, k, z).value.real();
  }
  if (!(z > 1.0) || !std::isfinite(M)) return std::nullopt;
  return StageTerm{k, z, M, fit};
}

}  // namespace

DombSykesFit domb_sykes_fit(const RatioSequence& ratios, int window_start) {
  const RatioWindow w = real_window(ratios, window_start);
  if (count_from(w, window_start) < 6)
    throw Error(ErrorCode::InsufficientWindow,
                "fewer than 6 usable ratio points at the requested window");
  int start = std::max(window_start, w.n.front());
  auto cur = fit_from(w, start);
  if (!cur)
    throw Error(ErrorCode::InsufficientWindow, "rational fit failed");
  // advance the window until the intercept stabilizes
  while (true) {
    const int next = start + std::max(2, start / 4);
    if (count_from(w, next) < 8) break;
    const auto nf = fit_from(w, next);
    if (!nf) break;
    const bool stable = std::abs(nf->p0 - cur->p0) < 1e-6 * std::abs(cur->p0);
    cur = nf;
    start = next;
    if (stable) break;
  }
  return finish_fit(w, start, *cur);
}

int select_window(const RatioSequence& ratios) {
  const RatioWindow w = real_window(ratios, ratios.start_index);
  if (static_cast<int>(w.n.size()) < 12)
    throw Error(ErrorCode::InsufficientWindow,
                "window selection needs at least 12 ratio points");
  const int N = w.n.back();
  // The merge criterion asks where the raw points sit on one straight
  // line, so the stabilization scan uses the q1-free fit; the rational
  // extrapolant would absorb the curvature it is meant to detect.
  auto line_from = [&](int start) -> std::optional<CoreFit> {
    std::vector<double> x, R;
    for (std::size_t i = 0; i < w.n.size(); ++i)
      if (w.n[i] >= start) {
        x.push_back(1.0 / (w.n[i] + 1.0));
        R.push_back(w.R[i]);
      }
    if (x.size() < 6) return std::nullopt;
    return fit_linear(x, R);
  };
  for (int start = std::max(1, w.n.front()); start < N - 10; ++start) {
    const int doubled = std::min(2 * std::max(start, 1), N - 6);
    if (count_from(w, start) < 6 || count_from(w, doubled) < 6) continue;
    const auto f1 = line_from(start);
    const auto f2 = line_from(doubled);
    if (!f1 || !f2) continue;
    const bool intercept_stable =
        std::abs(f2->p0 - f1->p0) < 1e-3 * std::abs(f1->p0);
    const bool straight = f1->rms <= 1e-6 * std::abs(f1->p0);
    if (intercept_stable && straight) return start;
  }
  return N / 2;
}

MagnitudeEstimate estimate_magnitude(const CoefficientSeries& series, double k,
                                     double z1) {
  if (!(z1 > 1.0))
    throw Error(ErrorCode::InvalidArgument, "z1 must exceed 1");
  const int N = static_cast<int>(series.size()) - 1;
  const int window = std::max(8, (N + 1) / 3);
  const int lo = std::max(1, N - window + 1);
  if (N - lo + 1 < 8)
    throw Error(ErrorCode::InvalidArgument,
                "magnitude estimate needs a tail of at least 8 coefficients");
  std::vector<double> re, im;
  for (int n = lo; n <= N; ++n) {
    Complex v;
    if (k == 0.0) {
      v = -static_cast<double>(n) * series[n] * std::pow(z1, n);
    } else {
      const double pattern = gamma_binomial(k, n) * std::pow(-z1, -n);
      if (pattern == 0.0 || !std::isfinite(pattern)) continue;
      v = series[n] / pattern * std::pow(z1, -k);
    }
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  if (re.size() < 4)
    throw Error(ErrorCode::UnstableEstimate, "too few usable tail terms");
  auto med = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
  };
  MagnitudeEstimate est;
  est.value = Complex(med(re), med(im));
  const double scale = std::max(std::abs(est.value), 1e-300);
  for (std::size_t i = 0; i < re.size(); ++i)
    est.spread = std::max(
        est.spread, std::abs(Complex(re[i], im[i]) - est.value) / scale);
  est.stable = est.spread <= 0.1;
  return est;
}

std::pair<SingularityModel, PeelTrace> peel(const CoefficientSeries& series,
                                            const PeelOptions& opts) {
  if (!series.is_real(1e-10))
    throw Error(ErrorCode::NotRealSeries,
                "peeling expects real coefficients; complex-pair data "
                "belongs to the sign-pattern analysis");
  if (series.size() < 8)
    throw Error(ErrorCode::InvalidArgument, "peeling needs a longer series");

  std::vector<double> orig(series.size());
  for (std::size_t n = 0; n < series.size(); ++n) orig[n] = series[n].real();
  const double scale = series.max_abs();
  const int N = static_cast<int>(series.size()) - 1;

  std::vector<StageTerm> terms;
  PeelTrace trace;
  trace.terminated_by = PeelTermination::StageCap;

  auto residual_vec = [&]() {
    std::vector<double> r = orig;
    for (const StageTerm& t : terms) {
      const std::vector<double> s = term_series(t.k, t.z, t.M, N);
      for (int n = 0; n <= N; ++n) r[n] -= s[n];
    }
    return r;
  };
  auto residual_norm = [&](const std::vector<double>& r) {
    double m = 0.0;
    for (double v : r) m = std::max(m, std::abs(v));
    return m / scale;
  };

  double prev_norm = std::numeric_limits<double>::infinity();
  for (int stage = 0; stage < opts.stage_cap; ++stage) {
    std::vector<double> cur = residual_vec();
    const double nrm = residual_norm(cur);
    if (nrm < opts.residual_tol) {
      trace.terminated_by = PeelTermination::ResidualBelowTolerance;
      break;
    }
    if (!terms.empty() && terms.back().fit.straight &&
        nrm < opts.straight_final_tol) {
      trace.terminated_by = PeelTermination::StraightLineFinal;
      break;
    }
    const auto st = fit_stage(cur, orig, opts, /*propagate_oscillation=*/stage == 0);
    if (!st) {
      trace.terminated_by = nrm < opts.residual_tol
                                ? PeelTermination::ResidualBelowTolerance
                                : PeelTermination::StageCap;
      if (nrm >= opts.residual_tol)
        trace.warnings.push_back(
            "no usable ratio window left; residual above tolerance");
      break;
    }
    terms.push_back(*st);
    // cyclic re-fits: each term against the data minus the others
    for (int sweep = 0; sweep < opts.refinement_sweeps; ++sweep) {
      for (std::size_t j = 0; j < terms.size(); ++j) {
        std::vector<double> r_j = orig;
        for (std::size_t i = 0; i < terms.size(); ++i) {
          if (i == j) continue;
          const std::vector<double> s =
              term_series(terms[i].k, terms[i].z, terms[i].M, N);
          for (int n = 0; n <= N; ++n) r_j[n] -= s[n];
        }
        const auto refit = fit_stage(r_j, orig, opts);
        if (refit && std::abs(refit->z - terms[j].z) < 0.3 * terms[j].z)
          terms[j] = *refit;
      }
    }
    const double newnorm = residual_norm(residual_vec());
    PeelStage ps;
    ps.fit = terms.back().fit;
    ps.identified =
        terms.back().k == 0.0
            ? Singularity::logarithmic(Complex(terms.back().z, 0.0),
                                       Complex(terms.back().M, 0.0))
            : Singularity::algebraic(terms.back().k,
                                     Complex(terms.back().z, 0.0),
                                     Complex(terms.back().M, 0.0));
    ps.residual_norm = newnorm;
    trace.stages.push_back(ps);
    if (newnorm >= prev_norm) {
      trace.warnings.push_back("stage did not reduce the residual; stopped");
      terms.pop_back();
      trace.stages.pop_back();
      break;
    }
    prev_norm = newnorm;
  }
  if (trace.terminated_by == PeelTermination::StageCap &&
      !trace.stages.empty()) {
    // loop exhausted: classify the exit from the final state
    const double nrm = residual_norm(residual_vec());
    if (nrm < opts.residual_tol)
      trace.terminated_by = PeelTermination::ResidualBelowTolerance;
    else if (terms.back().fit.straight && nrm < opts.straight_final_tol)
      trace.terminated_by = PeelTermination::StraightLineFinal;
  }
  trace.final_residual_norm = residual_norm(residual_vec());

  SingularityModel model;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const StageTerm& t = terms[i];
    const Singularity s =
        t.k == 0.0
            ? Singularity::logarithmic(Complex(t.z, 0.0), Complex(t.M, 0.0))
            : Singularity::algebraic(t.k, Complex(t.z, 0.0), Complex(t.M, 0.0));
    model.add(s);
    // per-stage records track the sweep-refined terms
    if (i < trace.stages.size()) trace.stages[i].identified = s;
  }
  // Offset so the model's own synthesis reproduces c_0. The stage series
  // use the log normalization M log(1 - z/z1) (zero at n = 0) while
  // synthesize_series carries M log(z1 - z) = M log z1 + ...; the offset
  // absorbs both that shift and anything unexplained at n = 0.
  if (!model.terms.empty()) {
    const std::vector<double> r = residual_vec();
    Complex log_shift{0.0, 0.0};
    for (const Singularity& s : model.terms)
      if (s.is_log()) log_shift += s.magnitude * std::log(s.location);
    model.constant_offset = Complex(r[0], 0.0) - log_shift;
  }
  return {model, trace};
}

}  // namespace singrec
