#include "singrec/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace singrec {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsideContour: return "InsideContour";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::NotRealSeries: return "NotRealSeries";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::NoCompleteRun: return "NoCompleteRun";
    case ErrorCode::NoRealRoot: return "NoRealRoot";
    case ErrorCode::DegenerateDiscriminant: return "DegenerateDiscriminant";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::SymmetryDegenerate: return "SymmetryDegenerate";
    case ErrorCode::OscillatingRatios: return "OscillatingRatios";
    case ErrorCode::InsufficientWindow: return "InsufficientWindow";
    case ErrorCode::UnstableEstimate: return "UnstableEstimate";
    case ErrorCode::TooCloseToContour: return "TooCloseToContour";
    case ErrorCode::AsymmetricGrid: return "AsymmetricGrid";
    case ErrorCode::AliasingBound: return "AliasingBound";
    case ErrorCode::NonEquispacedGrid: return "NonEquispacedGrid";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::AtSingularity: return "AtSingularity";
    case ErrorCode::InputError: return "InputError";
  }
  return "Unknown";
}

double CoefficientSeries::max_abs() const {
  double m = 0.0;
  for (const Complex& c : coeff) m = std::max(m, std::abs(c));
  return m;
}

bool CoefficientSeries::is_real(double tol) const {
  const double scale = max_abs();
  for (const Complex& c : coeff) {
    if (std::abs(c.imag()) > tol * scale) return false;
  }
  return true;
}

void CoefficientSeries::require_finite() const {
  for (const Complex& c : coeff) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorCode::InvalidArgument,
                  "coefficient series contains a non-finite entry");
  }
}

void SingularityModel::add(const Singularity& s) {
  terms.push_back(s);
  sort_terms();
}

void SingularityModel::sort_terms() {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Singularity& a, const Singularity& b) {
                     return std::abs(a.location) < std::abs(b.location);
                   });
}

double SingularityModel::min_location_abs() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Singularity& s : terms) m = std::min(m, std::abs(s.location));
  return m;
}

double gamma_binomial(double k, int n) {
  double g = 1.0;
  for (int i = 0; i < n; ++i) g *= (k - i) / (i + 1);
  return g;
}

static void require_exterior(const SingularityModel& model) {
  for (const Singularity& s : model.terms) {
    if (std::abs(s.location) <= 1.0)
      throw Error(ErrorCode::InsideContour,
                  "singularity location |z| <= 1 is not exterior to the contour");
  }
}

CoefficientSeries synthesize_series(const SingularityModel& model, int N) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
  require_exterior(model);
  CoefficientSeries out;
  out.coeff.assign(static_cast<std::size_t>(N) + 1, Complex{0.0, 0.0});
  out.coeff[0] += model.constant_offset;
  for (const Singularity& s : model.terms) {
    const Complex z = s.location;
    if (s.is_log()) {
      out.coeff[0] += s.magnitude * std::log(z);
      Complex zp = z;
      for (int n = 1; n <= N; ++n) {
        out.coeff[n] -= s.magnitude / (static_cast<double>(n) * zp);
        zp *= z;
      }
    } else {
      const Complex L = s.magnitude * std::pow(z, Complex(s.order, 0.0));
      const Complex inv = -1.0 / z;  // (-z)^{-1}
      Complex p{1.0, 0.0};
      for (int n = 0; n <= N; ++n) {
        out.coeff[n] += L * gamma_binomial(s.order, n) * p;
        p *= inv;
      }
    }
  }
  return out;
}

RatioSequence compute_ratios(const CoefficientSeries& series, double guard) {
  if (series.size() < 3)
    throw Error(ErrorCode::InvalidArgument,
                "ratio sequence needs at least 3 coefficients");
  series.require_finite();
  const int N = static_cast<int>(series.size()) - 1;
  const double floor = guard * series.max_abs();

  RatioSequence rs;
  rs.R.assign(N, std::nullopt);
  rs.D.assign(std::max(N - 1, 0), std::nullopt);
  for (int n = 0; n <= N; ++n) {
    if (std::abs(series[n]) < floor) rs.guarded.push_back(n);
  }
  for (int n = 0; n < N; ++n) {
    if (std::abs(series[n]) >= floor && std::abs(series[n]) > 0.0)
      rs.R[n] = series[n + 1] / series[n];
  }
  for (int n = 0; n + 1 < N; ++n) {
    if (rs.R[n] && rs.R[n + 1] && std::abs(*rs.R[n]) > 0.0)
      rs.D[n] = *rs.R[n + 1] / *rs.R[n];
  }
  int first = 0;
  while (first < N && !rs.R[first]) ++first;
  rs.start_index = first;
  return rs;
}

Complex evaluate_model(const SingularityModel& model, Complex z) {
  require_exterior(model);
  Complex sum = model.constant_offset;
  for (const Singularity& s : model.terms) {
    const Complex zj = s.location;
    const Complex w = 1.0 - z / zj;  // cut where w is real-negative: z = s zj, s > 1
    if (std::abs(w) < 1e-14)
      throw Error(ErrorCode::AtSingularity, "evaluation at a singularity location");
    const bool has_cut =
        s.is_log() || s.order != std::floor(s.order) || std::abs(s.order) > 1e308;
    if (has_cut && w.imag() == 0.0 && w.real() < 0.0)
      throw Error(ErrorCode::BranchCut, "evaluation on a branch cut");
    if (s.is_log()) {
      sum += s.magnitude * (std::log(zj) + std::log(w));
    } else {
      // M (zj - z)^k = M zj^k (1 - z/zj)^k, both factors principal
      sum += s.magnitude * std::pow(zj, Complex(s.order, 0.0)) *
             std::pow(w, Complex(s.order, 0.0));
    }
  }
  return sum;
}

double resynthesis_residual(const SingularityModel& model,
                            const CoefficientSeries& series) {
  if (series.size() == 0) return 0.0;
  const CoefficientSeries synth =
      synthesize_series(model, static_cast<int>(series.size()) - 1);
  const double scale = series.max_abs();
  if (scale == 0.0) return synth.max_abs() == 0.0 ? 0.0 : 1.0;
  double worst = 0.0;
  for (std::size_t n = 0; n < series.size(); ++n)
    worst = std::max(worst, std::abs(synth[n] - series[n]));
  return worst / scale;
}

}  // namespace singrec
