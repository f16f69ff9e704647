#include "singrec/complement.hpp"

#include <cmath>
#include <numbers>

namespace singrec {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_integer(double x) { return x == std::floor(x) && std::isfinite(x); }
}  // namespace

ComplementModel complement_from_model(const SingularityModel& model) {
  ComplementModel out;
  out.offset = -std::conj(model.constant_offset);
  for (const Singularity& s : model.terms) {
    if (s.is_log())
      throw Error(ErrorCode::UnsupportedKind,
                  "complement construction covers algebraic terms only");
    if (std::abs(s.location) <= 1.0)
      throw Error(ErrorCode::InsideContour, "model location must be exterior");
    ComplementModel::Term t;
    t.magnitude = -std::conj(s.magnitude);
    t.outer_location = std::conj(s.location);
    t.order = s.order;
    out.terms.push_back(t);
    out.interior_singularities.push_back(1.0 / std::conj(s.location));
    if (!is_integer(s.order) || s.order > 0.0) out.origin_singular = true;
  }
  if (out.origin_singular)
    out.interior_singularities.push_back(Complex{0.0, 0.0});
  return out;
}

Complex evaluate_complement(const ComplementModel& model, Complex z) {
  if (std::abs(z) < 1e-14)
    throw Error(ErrorCode::AtSingularity,
                "the complement couples a singular point at the origin");
  Complex sum = model.offset;
  for (const ComplementModel::Term& t : model.terms) {
    // factored branch mirroring the direct model's
    // (zbar - 1/z)^k = zbar^k (1 - 1/(z zbar))^k, so that F = -conj(f)
    // holds exactly on the contour; the cut of the second factor stays
    // inside it
    const Complex w = 1.0 - 1.0 / (z * t.outer_location);
    if (std::abs(w) < 1e-14)
      throw Error(ErrorCode::AtSingularity,
                  "evaluation at a complement singularity");
    if (!is_integer(t.order) && w.imag() == 0.0 && w.real() < 0.0)
      throw Error(ErrorCode::BranchCut, "evaluation on a branch cut");
    sum += t.magnitude * std::pow(t.outer_location, Complex(t.order, 0.0)) *
           std::pow(w, Complex(t.order, 0.0));
  }
  return sum;
}

BoundarySamples complement_trace(const ComplementModel& model, std::size_t M) {
  return BoundarySamples::from_function(M, [&](double th) {
    return evaluate_complement(model, std::polar(1.0, th));
  });
}

Complex cauchy_integral(const BoundarySamples& samples, Complex z,
                        CauchyMode mode) {
  samples.require_valid_grid();
  const std::size_t M = samples.size();
  const double r = std::abs(z);

  if (mode == CauchyMode::BoundaryPV) {
    if (std::abs(r - 1.0) > 1e-9)
      throw Error(ErrorCode::InvalidArgument,
                  "principal-value mode needs |z| = 1");
    // Fourier route: the PV relation reduces to evaluating the one-sided
    // series at z.
    const int N = static_cast<int>(M) / 2 - 1;
    const CoefficientSeries c = fourier_coefficients(samples, N);
    Complex acc{0.0, 0.0};
    for (int n = N; n >= 0; --n) acc = acc * z + c[n];
    return acc;
  }

  double min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < M; ++j) {
    const Complex t = std::polar(1.0, BoundarySamples::theta(j, M));
    min_dist = std::min(min_dist, std::abs(z - t));
  }
  if (min_dist < 2.0 * kPi / static_cast<double>(M))
    throw Error(ErrorCode::TooCloseToContour,
                "evaluation point too close to the contour for this grid");
  if (mode == CauchyMode::Interior && r >= 1.0)
    throw Error(ErrorCode::InvalidArgument, "Interior mode needs |z| < 1");
  if (mode == CauchyMode::Exterior && r <= 1.0)
    throw Error(ErrorCode::InvalidArgument, "Exterior mode needs |z| > 1");

  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < M; ++j) {
    const Complex t = std::polar(1.0, BoundarySamples::theta(j, M));
    acc += samples.values[j] * t / (t - z);
  }
  return acc / static_cast<double>(M);
}

std::vector<double> line_hilbert(const LineGrid& grid,
                                 const std::vector<double>& v,
                                 LineHilbertMode mode) {
  if (grid.size != v.size() || grid.size < 8 || grid.size % 2 != 0 ||
      !(grid.half_width > 0.0))
    throw Error(ErrorCode::AsymmetricGrid,
                "line transform needs an even symmetric grid x_i = -L + 2L i/M");
  // Periodic embedding: the sample sequence is one period on an index grid,
  // so the circular multiplier applies verbatim.
  BoundarySamples s{v};
  const BoundarySamples u = circular_hilbert(s);
  std::vector<double> out(v.size());
  const double sign = (mode == LineHilbertMode::Classical) ? 1.0 : -1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = sign * u.values[i].real();
  return out;
}

}  // namespace singrec
