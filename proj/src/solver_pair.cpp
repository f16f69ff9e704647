#include "singrec/solver_pair.hpp"

#include <algorithm>
#include <cmath>

#include "singrec/series.hpp"
#include "singrec/solver_single.hpp"

namespace singrec {

namespace {

double median_helper(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Gaussian elimination with partial pivoting; A is row-major n x n.
bool solve_dense(std::vector<double> A, std::vector<double> b,
                 std::vector<double>& x, int n) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
    if (std::abs(A[piv * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(A[piv * n + c], A[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = A[r * n + col] / A[col * n + col];
      for (int c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= A[r * n + c] * x[c];
    x[r] = s / A[r * n + r];
  }
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

std::vector<Complex> cubic_roots(Complex c3, Complex c2, Complex c1,
                                 Complex c0) {
  if (std::abs(c3) < 1e-14 * (std::abs(c2) + std::abs(c1) + std::abs(c0))) {
    std::vector<Complex> r;
    if (std::abs(c2) > 0.0) {
      const Complex disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
      r.push_back((-c1 + disc) / (2.0 * c2));
      r.push_back((-c1 - disc) / (2.0 * c2));
    }
    return r;
  }
  const Complex a = c2 / c3, b = c1 / c3, c = c0 / c3;
  const Complex p = b - a * a / 3.0;
  const Complex q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const Complex s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  Complex u = std::pow(-q / 2.0 + s, 1.0 / 3.0);
  if (std::abs(u) < 1e-30) u = std::pow(-q / 2.0 - s, 1.0 / 3.0);
  std::vector<Complex> roots;
  if (std::abs(u) < 1e-30) {
    roots.assign(3, -a / 3.0);
    return roots;
  }
  const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
  Complex uk = u;
  for (int i = 0; i < 3; ++i) {
    Complex x = uk - p / (3.0 * uk) - a / 3.0;
    for (int it = 0; it < 3; ++it) {  // Newton polish
      const Complex f = ((c3 * x + c2) * x + c1) * x + c0;
      const Complex df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
      if (std::abs(df) < 1e-300) break;
      x -= f / df;
    }
    roots.push_back(x);
    uk *= omega;
  }
  return roots;
}

Complex require_R(const RatioSequence& rs, int n) {
  if (!rs.has_R(n))
    throw Error(ErrorCode::IllConditioned,
                "required coefficient ratio is undefined");
  return *rs.R[n];
}

// Magnitudes from the n = 0, 1 matching equations:
// L1 + L2 = c0 and gamma_1(k1) L1/z1 + gamma_1(k2) L2/z2 = -c1.
bool magnitudes_from_leading(const CoefficientSeries& c, double k1, Complex z1,
                             double k2, Complex z2, Complex& M1, Complex& M2) {
  const Complex a21 = Complex(k1, 0.0) / z1;
  const Complex a22 = Complex(k2, 0.0) / z2;
  const Complex det = a22 - a21;
  if (std::abs(det) < 1e-14) return false;
  const Complex b1 = c[0], b2 = -c[1];
  const Complex L1 = (b1 * a22 - b2) / det;
  const Complex L2 = (b2 - b1 * a21) / det;
  M1 = L1 * std::pow(z1, Complex(-k1, 0.0));
  M2 = L2 * std::pow(z2, Complex(-k2, 0.0));
  return std::isfinite(std::abs(M1)) && std::isfinite(std::abs(M2));
}

struct Candidate {
  double k1 = 0.0, k2 = 0.0;
  Complex z1, z2, M1, M2;
  double residual = 0.0;
};

std::optional<Candidate> finish_candidate(const CoefficientSeries& series,
                                          double k1, Complex z1, double k2,
                                          Complex z2) {
  if (std::abs(z1) > std::abs(z2)) {
    std::swap(k1, k2);
    std::swap(z1, z2);
  }
  if (!(std::abs(z1) > 1.0) || !(std::abs(z2) > 1.0)) return std::nullopt;
  Candidate cand;
  cand.k1 = k1;
  cand.k2 = k2;
  cand.z1 = z1;
  cand.z2 = z2;
  if (!magnitudes_from_leading(series, k1, z1, k2, z2, cand.M1, cand.M2))
    return std::nullopt;
  SingularityModel m;
  m.add(Singularity::algebraic(k1, z1, cand.M1));
  m.add(Singularity::algebraic(k2, z2, cand.M2));
  cand.residual = resynthesis_residual(m, series);
  if (!std::isfinite(cand.residual)) return std::nullopt;
  return cand;
}

std::vector<GConsistencyRow> g_rows(const RatioSequence& rs, double k1,
                                    Complex z1, double k2, Complex z2,
                                    int n_lo, int max_rows) {
  std::vector<GConsistencyRow> rows;
  for (int n = n_lo;
       n < static_cast<int>(rs.R.size()) &&
       static_cast<int>(rows.size()) < max_rows;
       ++n) {
    if (!rs.has_R(n) || !rs.has_R(n - 1)) continue;
    try {
      GConsistencyRow row;
      row.n = n;
      row.g1 = g_function(k1, z1, rs, n);
      row.g2 = g_function(k2, z2, rs, n);
      row.difference = std::abs(row.g1 - row.g2);
      rows.push_back(row);
    } catch (const Error&) {
      // guarded denominator: the verification order is dropped
    }
  }
  return rows;
}

PairSolveResult result_from(const CoefficientSeries& series,
                            const Candidate& c, PairRoute route,
                            int verify_orders) {
  PairSolveResult out;
  out.route = route;
  out.singularities[0] = Singularity::algebraic(c.k1, c.z1, c.M1);
  out.singularities[1] = Singularity::algebraic(c.k2, c.z2, c.M2);
  out.resynthesis_residual = c.residual;
  const RatioSequence rs = compute_ratios(series);
  out.g_consistency = g_rows(rs, c.k1, c.z1, c.k2, c.z2, 1, verify_orders);
  return out;
}

// ---- general-pair machinery --------------------------------------------

// Residuals of the four elimination equations at n = 1..4.
bool pair_system(const std::vector<double>& R, const double* x,
                 double* f_out) {
  const double k1 = x[0], k2 = x[1], z1 = x[2], z2 = x[3];
  for (int i = 0; i < 4; ++i) {
    const int n = i + 1;
    const double d1 = (k2 - n + 1) * z1 - (k1 - n + 1) * z2;
    const double d2 = k1 - n + 1;
    const double d3 = n * z2 - (n - k2 - 1) / R[n - 1];
    if (std::abs(d1) < 1e-120 || std::abs(d2) < 1e-120 ||
        std::abs(d3) < 1e-120)
      return false;
    const double lhs = (z1 - z2) / d1;
    const double rhs = 1.0 + (n * z1 / d2) * ((k2 - n) + (n + 1) * R[n] * z2) / d3;
    f_out[i] = lhs - rhs;
    if (!std::isfinite(f_out[i])) return false;
  }
  return true;
}

double norm4(const double* f) {
  return std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2] + f[3] * f[3]);
}

bool newton_pair(const std::vector<double>& R, std::array<double, 4>& x,
                 const PairSolveOptions& opts) {
  double f[4];
  if (!pair_system(R, x.data(), f)) return false;
  for (int it = 0; it < opts.newton_iteration_cap; ++it) {
    double fmax = 0.0;
    for (double v : f) fmax = std::max(fmax, std::abs(v));
    if (fmax < 1e-13) return true;

    std::vector<double> J(16);
    for (int j = 0; j < 4; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      std::array<double, 4> xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      double fp[4], fm[4];
      if (!pair_system(R, xp.data(), fp) || !pair_system(R, xm.data(), fm))
        return false;
      for (int i = 0; i < 4; ++i) J[i * 4 + j] = (fp[i] - fm[i]) / (2.0 * h);
    }
    std::vector<double> rhs{-f[0], -f[1], -f[2], -f[3]}, dx;
    if (!solve_dense(std::move(J), std::move(rhs), dx, 4)) return false;

    double lam = 1.0;
    const double fn = norm4(f);
    bool accepted = false;
    for (int half = 0; half < opts.damping_halvings; ++half) {
      std::array<double, 4> xn = x;
      for (int j = 0; j < 4; ++j) xn[j] += lam * dx[j];
      double fnew[4];
      if (pair_system(R, xn.data(), fnew) && norm4(fnew) < fn) {
        x = xn;
        std::copy(fnew, fnew + 4, f);
        accepted = true;
        break;
      }
      lam *= 0.5;
    }
    if (!accepted) return false;
    double step = 0.0, xs = 1.0;
    for (int j = 0; j < 4; ++j) {
      step += lam * dx[j] * lam * dx[j];
      xs = std::max(xs, std::abs(x[j]));
    }
    if (std::sqrt(step) < opts.step_tol * xs) {
      double fend = 0.0;
      for (double v : f) fend = std::max(fend, std::abs(v));
      return fend < 1e-9;
    }
  }
  double fend = 0.0;
  for (double v : f) fend = std::max(fend, std::abs(v));
  return fend < 1e-9;
}

// Variable-projection Gauss-Newton on the coefficient fit: magnitudes are
// linear and projected out, so a rough start slides into the basin of the
// elimination system before the Newton polish.
class VarPro {
 public:
  VarPro(const CoefficientSeries& c) : c_(c), N_(static_cast<int>(c.size()) - 1) {}

  bool refine(std::array<double, 4>& x, int itmax = 40) const {
    std::vector<double> r;
    double nrm;
    if (!resid(x.data(), r, nrm)) return false;
    for (int it = 0; it < itmax; ++it) {
      std::vector<std::vector<double>> Jc(4);
      for (int j = 0; j < 4; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
        std::array<double, 4> xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        std::vector<double> rp, rm;
        double np_, nm_;
        if (!resid(xp.data(), rp, np_) || !resid(xm.data(), rm, nm_))
          return it > 0;
        Jc[j].resize(r.size());
        for (std::size_t i = 0; i < r.size(); ++i)
          Jc[j][i] = (rp[i] - rm[i]) / (2.0 * h);
      }
      std::vector<double> JtJ(16, 0.0), Jtr(4, 0.0), dx;
      for (int a = 0; a < 4; ++a) {
        for (int b = a; b < 4; ++b) {
          double s = 0.0;
          for (std::size_t i = 0; i < r.size(); ++i) s += Jc[a][i] * Jc[b][i];
          JtJ[a * 4 + b] = JtJ[b * 4 + a] = s;
        }
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) s += Jc[a][i] * r[i];
        Jtr[a] = -s;
      }
      double mu = 0.0;
      bool solved = false;
      for (int tries = 0; tries < 6 && !solved; ++tries) {
        std::vector<double> M = JtJ;
        for (int a = 0; a < 4; ++a) M[a * 4 + a] += mu;
        solved = solve_dense(std::move(M), Jtr, dx, 4);
        mu = (mu == 0.0) ? 1e-8 * (JtJ[0] + JtJ[5] + JtJ[10] + JtJ[15])
                         : mu * 100.0;
      }
      if (!solved) return it > 0;
      double lam = 1.0;
      bool acc = false;
      for (int half = 0; half < 25; ++half) {
        std::array<double, 4> xn = x;
        for (int j = 0; j < 4; ++j) xn[j] += lam * dx[j];
        std::vector<double> rn;
        double nn;
        if (xn[2] > 1.005 && xn[3] > 1.005 && resid(xn.data(), rn, nn) &&
            nn < nrm) {
          x = xn;
          r = rn;
          nrm = nn;
          acc = true;
          break;
        }
        lam *= 0.5;
      }
      if (!acc) break;
      double step = 0.0;
      for (int j = 0; j < 4; ++j) step += lam * dx[j] * lam * dx[j];
      if (std::sqrt(step) < 1e-11) break;
    }
    return true;
  }

 private:
  bool resid(const double* x, std::vector<double>& r, double& nrm) const {
    const double k1 = x[0], k2 = x[1], z1 = x[2], z2 = x[3];
    if (!(z1 > 1.0) || !(z2 > 1.0)) return false;
    const double L1 = std::pow(z1, k1), L2 = std::pow(z2, k2);
    if (!std::isfinite(L1) || !std::isfinite(L2)) return false;
    std::vector<double> A(2 * static_cast<std::size_t>(N_ + 1));
    double p1 = 1.0, p2 = 1.0;
    for (int n = 0; n <= N_; ++n) {
      A[2 * n] = L1 * gamma_binomial(k1, n) * p1;
      A[2 * n + 1] = L2 * gamma_binomial(k2, n) * p2;
      p1 /= -z1;
      p2 /= -z2;
    }
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (int n = 0; n <= N_; ++n) {
      const double u = A[2 * n], v = A[2 * n + 1], cn = c_[n].real();
      a11 += u * u;
      a12 += u * v;
      a22 += v * v;
      b1 += u * cn;
      b2 += v * cn;
    }
    const double det = a11 * a22 - a12 * a12;
    if (!(std::abs(det) > 1e-280) || !std::isfinite(det)) return false;
    const double m1 = (b1 * a22 - a12 * b2) / det;
    const double m2 = (a11 * b2 - b1 * a12) / det;
    r.assign(N_ + 1, 0.0);
    nrm = 0.0;
    for (int n = 0; n <= N_; ++n) {
      r[n] = A[2 * n] * m1 + A[2 * n + 1] * m2 - c_[n].real();
      nrm += r[n] * r[n];
    }
    nrm = std::sqrt(nrm);
    return std::isfinite(nrm);
  }

  const CoefficientSeries& c_;
  int N_;
};

// Coarse (k2, z2) scan scored by single-term consistency of the eliminated
// series; the best few grid points become 4-parameter seeds.
std::vector<std::array<double, 4>> tilde_scan_seeds(
    const CoefficientSeries& series, int nseeds) {
  struct Scored {
    double spread;
    std::array<double, 4> seed;
  };
  std::vector<Scored> scored;
  const double cmax = series.max_abs();
  for (double k2 = -3.2; k2 <= 0.01; k2 += 0.2) {
    for (int iz = 0; iz < 16; ++iz) {
      const double z2 =
          1.2 * std::pow(8.0 / 1.2, static_cast<double>(iz) / 15.0);
      const CoefficientSeries ct =
          tilde_coefficients(series, k2, Complex(z2, 0.0));
      bool usable = true;
      for (std::size_t i = 1; i < std::min<std::size_t>(9, ct.size()); ++i)
        if (std::abs(ct[i]) < 1e-14 * cmax) usable = false;
      if (!usable) continue;
      std::vector<double> R;
      for (std::size_t i = 1; i + 1 < ct.size(); ++i) {
        if (std::abs(ct[i]) < 1e-280) break;
        R.push_back((ct[i + 1] / ct[i]).real());
      }
      std::vector<double> ks, zs;
      for (std::size_t n = 1; n + 1 < std::min<std::size_t>(R.size(), 7);
           ++n) {
        if (R[n - 1] == 0.0 || R[n] == 0.0) break;
        const double Dn = R[n] / R[n - 1];
        const double den = (n + 1.0) - (n + 2.0) * Dn;
        if (std::abs(den) < 1e-12) break;
        const double k = n + (n + 1.0) / den;
        ks.push_back(k);
        zs.push_back((n - k) / ((n + 1.0) * R[n]));
      }
      if (ks.size() < 3) continue;
      const double km = median_helper(ks), zm = median_helper(zs);
      double spread = 0.0;
      for (double k : ks) spread = std::max(spread, std::abs(k - km));
      for (double z : zs) spread = std::max(spread, std::abs(z - zm));
      if (!std::isfinite(spread) || !(zm > 1.0)) continue;
      scored.push_back({spread, {km, k2, zm, z2}});
    }
  }
  std::sort(scored.begin(), scored.end(),
            [](const Scored& a, const Scored& b) { return a.spread < b.spread; });
  std::vector<std::array<double, 4>> out;
  for (const Scored& s : scored) {
    if (static_cast<int>(out.size()) >= nseeds) break;
    out.push_back(s.seed);
  }
  return out;
}

}  // namespace

CoefficientSeries tilde_coefficients(const CoefficientSeries& series, double k,
                                     Complex z2) {
  if (std::abs(z2) == 0.0)
    throw Error(ErrorCode::InvalidArgument, "z2 must be nonzero");
  if (series.size() < 3)
    throw Error(ErrorCode::InvalidArgument, "need at least 3 coefficients");
  CoefficientSeries out;
  out.coeff.assign(series.size(), Complex{0.0, 0.0});
  for (std::size_t n = 0; n + 1 < series.size(); ++n) {
    const double nn = static_cast<double>(n);
    out.coeff[n + 1] =
        (Complex(k - nn, 0.0) / (Complex(nn + 1.0, 0.0) * z2)) * series[n] +
        series[n + 1];
  }
  return out;
}

Complex g_function(double k, Complex z, const RatioSequence& ratios, int n) {
  if (n < 1 || !ratios.has_R(n) || !ratios.has_R(n - 1))
    throw Error(ErrorCode::IllConditioned, "G_n needs ratios R_{n-1} and R_n");
  const Complex Rn = *ratios.R[n];
  const Complex Rn1 = *ratios.R[n - 1];
  const Complex num = Complex(n + 1.0, 0.0) * Rn * z - Complex(n - k, 0.0);
  const Complex den = Complex(n, 0.0) * z - Complex(n - 1.0 - k, 0.0) / Rn1;
  if (std::abs(den) < 1e-12 * std::max(1.0, std::abs(z)))
    throw Error(ErrorCode::IllConditioned, "H_n denominator vanished");
  return -Complex(n, 0.0) * (num / den) / z;
}

namespace {

// Logarithmic pair candidate for a zero key index: locations from the
// ratio relations, magnitudes from -n c_n = M1 z1^{-n} + M2 z2^{-n} at
// n = 1, 2.
std::optional<Candidate> finish_log_candidate(const CoefficientSeries& series,
                                              Complex z1, Complex z2) {
  if (std::abs(z1) > std::abs(z2)) std::swap(z1, z2);
  if (!(std::abs(z1) > 1.0) || !(std::abs(z2) > 1.0)) return std::nullopt;
  const Complex a11 = 1.0 / z1, a12 = 1.0 / z2;
  const Complex a21 = a11 * a11, a22 = a12 * a12;
  const Complex det = a11 * a22 - a12 * a21;
  if (std::abs(det) < 1e-14) return std::nullopt;
  const Complex b1 = -series[1], b2 = -2.0 * series[2];
  Candidate cand;
  cand.k1 = 0.0;
  cand.k2 = 0.0;
  cand.z1 = z1;
  cand.z2 = z2;
  cand.M1 = (b1 * a22 - a12 * b2) / det;
  cand.M2 = (a11 * b2 - b1 * a21) / det;
  SingularityModel m;
  m.add(Singularity::logarithmic(z1, cand.M1));
  m.add(Singularity::logarithmic(z2, cand.M2));
  // the data may follow either log normalization; absorb c_0 exactly
  const CoefficientSeries probe = synthesize_series(m, 0);
  m.constant_offset = series[0] - probe[0];
  cand.residual = resynthesis_residual(m, series);
  if (!std::isfinite(cand.residual)) return std::nullopt;
  return cand;
}

}  // namespace

PairSolveResult solve_equal_order(const CoefficientSeries& series,
                                  const PairSolveOptions& opts) {
  if (series.size() < 6)
    throw Error(ErrorCode::InvalidArgument,
                "equal-order solve needs at least 6 coefficients");
  const RatioSequence rs = compute_ratios(series);

  std::vector<Candidate> cands;
  std::vector<Candidate> log_cands;
  bool saw_degenerate = false, any_base = false;
  Complex degenerate_at{};

  // Window bases n = 1 and n = 2. The n = 1 equations involve R_0, which a
  // logarithmic pair's c_0 does not obey; the n = 2 base covers that case.
  // Both bases still anchor on the leading coefficient (the magnitude
  // equations start at n = 0), so an undefined R_0 takes the whole route out.
  if (!rs.has_R(0))
    throw Error(ErrorCode::IllConditioned,
                "the pair algebra anchors at the leading coefficient ratio");
  for (int base : {1, 2}) {
    if (!rs.has_R(base - 1) || !rs.has_R(base) || !rs.has_R(base + 1) ||
        !rs.has_R(base + 2))
      continue;
    any_base = true;
    const Complex Rm = *rs.R[base - 1], Rn = *rs.R[base],
                  Rp = *rs.R[base + 1], Rq = *rs.R[base + 2];
    const double n = base;

    // Denominator-cleared elimination equation at order n; a cubic in k
    // recovered exactly by interpolation through 4 sample points.
    auto cleared = [&](Complex k) -> Complex {
      auto K = [&](int j) {
        return (Complex(n + j, 0.0) - k) / Complex(n + 1.0 + j, 0.0);
      };
      const Complex E = K(-1) / Rm * (Rp / K(1) - Rq / K(2)) +
                        K(1) / Rp * Rn / K(0) + K(0) / Rn * Rq / K(2) -
                        Complex(2.0, 0.0);
      return E * (Complex(n, 0.0) - k) * (Complex(n + 1.0, 0.0) - k) *
             (Complex(n + 2.0, 0.0) - k);
    };
    const double samples[4] = {n - 1.5, n - 0.52, n + 3.1, n + 4.3};
    std::vector<double> V(16), vr(4), vi(4), cr, ci;
    for (int i = 0; i < 4; ++i) {
      const Complex val = cleared(Complex(samples[i], 0.0));
      vr[i] = val.real();
      vi[i] = val.imag();
      double p = 1.0;
      for (int j = 3; j >= 0; --j) {
        V[i * 4 + j] = p;  // column j holds samples^(3-j)
        p *= samples[i];
      }
    }
    if (!solve_dense(V, vr, cr, 4) || !solve_dense(V, vi, ci, 4)) continue;
    const std::vector<Complex> roots =
        cubic_roots(Complex(cr[0], ci[0]), Complex(cr[1], ci[1]),
                    Complex(cr[2], ci[2]), Complex(cr[3], ci[3]));

    for (const Complex& root : roots) {
      if (std::abs(root.imag()) >
          opts.root_imag_tol * std::max(1.0, std::abs(root.real())))
        continue;  // complex-conjugate roots dismissed by confirmation
      const double k = root.real();
      if (std::abs(n - k) < 1e-9 || std::abs(n + 1.0 - k) < 1e-9 ||
          std::abs(n + 2.0 - k) < 1e-9)
        continue;  // clearing factors vanish here
      // z1 z2 = A(n, k), then z1 + z2 from the order-n basic equation.
      const Complex A_num = Complex(n - k, 0.0) / ((n + 1.0) * Rn) -
                            Complex(n - k - 1.0, 0.0) / (n * Rm);
      const Complex A_den = (n + 1.0) * Rn / Complex(n - k, 0.0) -
                            (n + 2.0) * Rp / Complex(n + 1.0 - k, 0.0);
      if (std::abs(A_den) < 1e-11 && std::abs(A_num) < 1e-11) {
        // single-singularity data collapses the separation equations
        saw_degenerate = true;
        degenerate_at = Complex(n - k, 0.0) / ((n + 1.0) * Rn);
        continue;
      }
      if (std::abs(A_den) < 1e-300) continue;
      const Complex A = A_num / A_den;
      const Complex S = (n + 1.0) * Rn * A / Complex(n - k, 0.0) +
                        Complex(n - k - 1.0, 0.0) / (n * Rm);
      const Complex B = S / 2.0;
      const Complex disc = B * B - A;
      if (std::abs(disc) < 1e-12 * std::max(1.0, std::abs(A))) {
        saw_degenerate = true;
        degenerate_at = B;
        continue;
      }
      const Complex sq = std::sqrt(disc);
      if (std::abs(k) <= 0.05) {
        // zero key index: the pair is logarithmic
        const auto lc = finish_log_candidate(series, B - sq, B + sq);
        if (lc) log_cands.push_back(*lc);
        continue;
      }
      const auto cand = finish_candidate(series, k, B - sq, k, B + sq);
      if (cand) cands.push_back(*cand);
    }
    if (!cands.empty() && base == 1) break;  // the primary window succeeded
  }
  if (!any_base)
    throw Error(ErrorCode::IllConditioned,
                "required coefficient ratios are undefined");

  // confirmation step: a candidate must exhibit the symmetric
  // G-equality on the verification orders
  auto g_verified = [&](const Candidate& c, bool log_kind) {
    const int lo = log_kind ? 2 : 1;
    const auto rows = g_rows(rs, log_kind ? 0.0 : c.k1, c.z1,
                             log_kind ? 0.0 : c.k2, c.z2, lo,
                             opts.verify_orders);
    if (rows.empty()) return false;
    for (const GConsistencyRow& row : rows) {
      const double scale =
          std::max({1.0, std::abs(row.g1), std::abs(row.g2)});
      if (row.difference > opts.g_tol * scale) return false;
    }
    return true;
  };
  std::erase_if(cands,
                [&](const Candidate& c) { return !g_verified(c, false); });
  std::erase_if(log_cands,
                [&](const Candidate& c) { return !g_verified(c, true); });

  auto by_residual = [](const Candidate& a, const Candidate& b) {
    return a.residual < b.residual;
  };
  std::sort(cands.begin(), cands.end(), by_residual);
  std::sort(log_cands.begin(), log_cands.end(), by_residual);

  const bool take_log =
      !log_cands.empty() &&
      (cands.empty() || log_cands.front().residual < cands.front().residual);
  if (take_log) {
    const Candidate& c = log_cands.front();
    PairSolveResult out;
    out.route = PairRoute::EqualOrder;
    out.singularities[0] = Singularity::logarithmic(c.z1, c.M1);
    out.singularities[1] = Singularity::logarithmic(c.z2, c.M2);
    out.resynthesis_residual = c.residual;
    out.g_consistency = g_rows(rs, 0.0, c.z1, 0.0, c.z2, 2, opts.verify_orders);
    out.candidates_accepted = static_cast<int>(log_cands.size());
    return out;
  }
  if (cands.empty()) {
    if (saw_degenerate)
      throw Error(ErrorCode::DegenerateDiscriminant,
                  "coincident locations near z = " +
                      std::to_string(degenerate_at.real()) +
                      "; a single-singularity model applies");
    throw Error(ErrorCode::NoRealRoot,
                "no real cubic root passed verification");
  }
  PairSolveResult out = result_from(series, cands.front(),
                                    PairRoute::EqualOrder, opts.verify_orders);
  out.candidates_accepted = static_cast<int>(cands.size());
  return out;
}

PairSolveResult solve_general_pair(
    const CoefficientSeries& series,
    const std::optional<std::array<double, 4>>& init,
    const PairSolveOptions& opts) {
  if (series.size() < 6)
    throw Error(ErrorCode::InvalidArgument,
                "general-pair solve needs at least 6 coefficients");
  if (!series.is_real(1e-9))
    throw Error(ErrorCode::NotRealSeries,
                "the general-pair Newton route expects real coefficients");
  const RatioSequence rs = compute_ratios(series);
  std::vector<double> R(5);
  for (int n = 0; n <= 4; ++n) R[n] = require_R(rs, n).real();

  std::vector<std::array<double, 4>> starts;
  if (init) starts.push_back(*init);

  std::optional<PairSolveResult> equal_order;
  try {
    PairSolveResult eq = solve_equal_order(series, opts);
    equal_order = eq;
    starts.push_back({eq.singularities[0].order, eq.singularities[1].order,
                      std::abs(eq.singularities[0].location),
                      std::abs(eq.singularities[1].location)});
  } catch (const Error&) {
  }

  for (const auto& s : tilde_scan_seeds(series, 4)) starts.push_back(s);

  double kh = -1.0, zh = 1.5;
  try {
    const SingleSolve ss = solve_single(series);
    kh = ss.diagnostics.raw.order;
    zh = std::abs(ss.diagnostics.raw.location);
  } catch (const Error&) {
  }
  for (double dk1 : {0.0, -0.6, 0.6})
    for (double dk2 : {0.0, -0.9, 0.9, -1.8, 1.8})
      for (double rz : {1.35, 1.8, 2.6})
        starts.push_back({kh + dk1, kh + dk2, zh, zh * rz});

  const VarPro vp(series);
  std::vector<Candidate> cands;
  int tried = 0, converged = 0;
  bool saw_coincident_stall = false;
  for (const auto& start : starts) {
    if (tried >= opts.start_budget) break;
    ++tried;
    std::array<double, 4> refined = start;
    const bool have_refined = vp.refine(refined);

    std::optional<std::array<double, 4>> solution;
    for (int attempt = 0; attempt < (have_refined ? 2 : 1); ++attempt) {
      std::array<double, 4> x = (attempt == 0 && have_refined) ? refined : start;
      if (newton_pair(R, x, opts)) {
        solution = x;
        break;
      }
    }
    if (!solution) continue;
    ++converged;
    const double k1 = (*solution)[0], k2 = (*solution)[1];
    const double z1 = (*solution)[2], z2 = (*solution)[3];
    if (std::abs(k1 - k2) < 1e-8 && std::abs(z1 - z2) < 1e-8 * std::abs(z1)) {
      saw_coincident_stall = true;  // equal-parameter manifold carries no pair
      continue;
    }
    const auto cand =
        finish_candidate(series, k1, Complex(z1, 0.0), k2, Complex(z2, 0.0));
    if (!cand) continue;
    cands.push_back(*cand);
    if (cand->residual < 1e-10) break;
  }

  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.residual != b.residual) return a.residual < b.residual;
              return std::abs(a.z1) < std::abs(b.z1);
            });

  if (!cands.empty() && cands.front().residual <= opts.accept_residual) {
    PairSolveResult out = result_from(series, cands.front(),
                                      PairRoute::General, opts.verify_orders);
    out.starts_tried = tried;
    out.starts_converged = converged;
    return out;
  }
  if (equal_order) {
    PairSolveResult out = *equal_order;
    out.starts_tried = tried;
    out.starts_converged = converged;
    out.warnings.push_back(
        saw_coincident_stall
            ? "general Newton stalled on the equal-parameter manifold; "
              "equal-order result reported"
            : "general Newton found no acceptable candidate; equal-order "
              "result reported");
    return out;
  }
  throw Error(ErrorCode::NonConvergence,
              "no start converged to an acceptable two-singularity model");
}

}  // namespace singrec
