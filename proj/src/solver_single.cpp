#include "singrec/solver_single.hpp"

#include <algorithm>
#include <cmath>

#include "singrec/series.hpp"

namespace singrec {

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  if (v.size() % 2 == 1) return v[m];
  return 0.5 * (v[m - 1] + v[m]);
}

Complex median_complex(const std::vector<Complex>& v) {
  std::vector<double> re, im;
  re.reserve(v.size());
  im.reserve(v.size());
  for (const Complex& x : v) {
    re.push_back(x.real());
    im.push_back(x.imag());
  }
  return Complex(median_of(std::move(re)), median_of(std::move(im)));
}

struct FrameEstimates {
  std::vector<int> orders;
  std::vector<Complex> k, z;
  Complex k_med, z_med;
  double spread_k = 0.0, spread_z = 0.0;
};

// Per-window estimates; window n uses (R_n, R_{n+1}) through D_n.
// Direct frame: base formula at order n. Shifted frame: order n-1 on the
// once-shifted series (same coefficient window, same D_n).
std::optional<FrameEstimates> frame_estimates(const RatioSequence& rs,
                                              EstimateFrame frame,
                                              const SingleSolveOptions& opts) {
  FrameEstimates fe;
  const int limit = static_cast<int>(rs.D.size());
  for (int n = 1; n < limit && static_cast<int>(fe.k.size()) < opts.max_orders;
       ++n) {
    if (!rs.has_D(n) || !rs.has_R(n)) continue;
    const Complex Dn = *rs.D[n];
    const Complex Rn = *rs.R[n];
    const int m = (frame == EstimateFrame::Direct) ? n : n - 1;
    const Complex den = Complex(m + 1, 0.0) - Complex(m + 2, 0.0) * Dn;
    if (std::abs(den) < opts.guard) continue;
    const Complex k = Complex(m, 0.0) + Complex(m + 1, 0.0) / den;
    const Complex z = (Complex(m, 0.0) - k) / (Complex(m + 1, 0.0) * Rn);
    fe.orders.push_back(n);
    fe.k.push_back(k);
    fe.z.push_back(z);
  }
  if (fe.k.empty()) return std::nullopt;
  fe.k_med = median_complex(fe.k);
  fe.z_med = median_complex(fe.z);
  for (const Complex& k : fe.k)
    fe.spread_k = std::max(fe.spread_k, std::abs(k - fe.k_med));
  for (const Complex& z : fe.z)
    fe.spread_z = std::max(fe.spread_z, std::abs(z - fe.z_med));
  return fe;
}

Complex magnitude_from_c0(Complex c0, double k, Complex z, bool is_log) {
  if (is_log) return c0 / std::log(z);
  return c0 / std::pow(z, Complex(k, 0.0));
}

}  // namespace

Singularity snap_parameters(const Singularity& raw, double tol, Complex c0) {
  if (tol <= 0.0) throw Error(ErrorCode::InvalidArgument, "snap tol must be > 0");
  Singularity out = raw;
  if (!raw.is_log()) {
    double best_d = std::numeric_limits<double>::infinity();
    double best_v = raw.order;
    for (int q = 1; q <= 4; ++q) {
      const double p = std::round(raw.order * q);
      const double d = q * q * std::abs(raw.order - p / q);
      if (d < best_d) {
        best_d = d;
        best_v = p / q;
      }
    }
    if (best_d <= tol) out.order = best_v;
  }
  auto snap_comp = [tol](double x) {
    const double g = std::round(x * 1000.0) / 1000.0;
    return std::abs(x - g) <= tol ? g : x;
  };
  out.location = Complex(snap_comp(raw.location.real()),
                         snap_comp(raw.location.imag()));
  if (!out.is_log() && out.order == 0.0) {
    out.kind = SingularityKind::Logarithmic;
    out.order = 0.0;
  }
  out.magnitude = magnitude_from_c0(c0, out.order, out.location, out.is_log());
  return out;
}

SingleSolve solve_single(const CoefficientSeries& series,
                         const SingleSolveOptions& opts) {
  if (series.size() < 5)
    throw Error(ErrorCode::InvalidArgument,
                "single-singularity solve needs at least 5 coefficients");
  const RatioSequence rs = compute_ratios(series);

  const auto direct = frame_estimates(rs, EstimateFrame::Direct, opts);
  const auto shifted = frame_estimates(rs, EstimateFrame::Shifted, opts);
  if (!direct && !shifted)
    throw Error(ErrorCode::IllConditioned,
                "no usable estimation window (all denominators degenerate)");

  EstimateFrame frame = EstimateFrame::Direct;
  const FrameEstimates* fe = direct ? &*direct : &*shifted;
  if (direct && shifted && shifted->spread_k < direct->spread_k) {
    frame = EstimateFrame::Shifted;
    fe = &*shifted;
  } else if (!direct) {
    frame = EstimateFrame::Shifted;
    fe = &*shifted;
  }

  const Complex z1 = fe->z_med;
  if (std::abs(z1) <= 1.0)
    throw Error(ErrorCode::InsideContour,
                "recovered location does not lie outside the unit contour");
  const double k = fe->k_med.real();
  const Complex c0 = series[0];

  Singularity raw = Singularity::algebraic(k, z1, Complex{});
  raw.magnitude = magnitude_from_c0(c0, k, z1, false);

  SingleSolveDiagnostics diag;
  diag.orders = fe->orders;
  diag.k_of_n = fe->k;
  diag.z1_of_n = fe->z;
  diag.frame = frame;
  diag.spread_k = fe->spread_k;
  diag.spread_z = fe->spread_z;
  diag.consistent =
      fe->spread_k < opts.consistency_tol &&
      fe->spread_z < opts.consistency_tol * std::abs(z1);
  diag.raw = raw;

  Singularity chosen = raw;
  const Singularity snapped = snap_parameters(raw, opts.snap_tol, c0);
  if (snapped.order != raw.order || snapped.location != raw.location ||
      snapped.kind != raw.kind) {
    diag.snapped = snapped;
    chosen = snapped;
  }

  SingularityModel model;
  model.add(chosen);
  diag.resynthesis_residual = resynthesis_residual(model, series);
  return SingleSolve{chosen, diag};
}

std::vector<SensitivityBound> sensitivity(const CoefficientSeries& series,
                                          double eps,
                                          const SingleSolveOptions& opts) {
  if (eps < 0.0) throw Error(ErrorCode::InvalidArgument, "eps must be >= 0");
  const RatioSequence rs0 = compute_ratios(series);
  const auto direct = frame_estimates(rs0, EstimateFrame::Direct, opts);
  const auto shifted = frame_estimates(rs0, EstimateFrame::Shifted, opts);
  if (!direct && !shifted)
    throw Error(ErrorCode::IllConditioned, "no usable estimation window");
  EstimateFrame frame = EstimateFrame::Direct;
  const FrameEstimates* fe = direct ? &*direct : &*shifted;
  if (direct && shifted && shifted->spread_k < direct->spread_k) {
    frame = EstimateFrame::Shifted;
    fe = &*shifted;
  } else if (!direct) {
    frame = EstimateFrame::Shifted;
    fe = &*shifted;
  }

  auto estimates_at = [&](const CoefficientSeries& s)
      -> std::optional<FrameEstimates> {
    return frame_estimates(compute_ratios(s), frame, opts);
  };

  std::vector<SensitivityBound> bounds;
  for (std::size_t idx = 0; idx < fe->orders.size(); ++idx) {
    const int n = fe->orders[idx];
    SensitivityBound b;
    b.order = n;
    if (eps > 0.0) {
      for (int i = n; i <= n + 2; ++i) {
        const double h = eps * std::abs(series[i]);
        if (h == 0.0) continue;
        CoefficientSeries plus = series, minus = series;
        plus.coeff[i] += h;
        minus.coeff[i] -= h;
        const auto ep = estimates_at(plus);
        const auto em = estimates_at(minus);
        if (!ep || !em) continue;
        auto find = [n](const FrameEstimates& f) -> std::optional<std::size_t> {
          for (std::size_t j = 0; j < f.orders.size(); ++j)
            if (f.orders[j] == n) return j;
          return std::nullopt;
        };
        const auto jp = find(*ep), jm = find(*em);
        if (!jp || !jm) continue;
        b.k_bound += 0.5 * std::abs(ep->k[*jp] - em->k[*jm]);
        b.z_bound += 0.5 * std::abs(ep->z[*jp] - em->z[*jm]);
      }
    }
    bounds.push_back(b);
  }
  return bounds;
}

}  // namespace singrec
