#ifndef SINGREC_TYPES_HPP
#define SINGREC_TYPES_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace singrec {

using Complex = std::complex<double>;

enum class ErrorCode {
  InvalidArgument,
  InsideContour,
  IllConditioned,
  NotRealSeries,
  ZeroConstantTerm,
  NoCompleteRun,
  NoRealRoot,
  DegenerateDiscriminant,
  NonConvergence,
  SymmetryDegenerate,
  OscillatingRatios,
  InsufficientWindow,
  UnstableEstimate,
  TooCloseToContour,
  AsymmetricGrid,
  AliasingBound,
  NonEquispacedGrid,
  UnsupportedKind,
  BranchCut,
  AtSingularity,
  InputError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Finite complex sequence c_0..c_N.
struct CoefficientSeries {
  std::vector<Complex> coeff;

  CoefficientSeries() = default;
  explicit CoefficientSeries(std::vector<Complex> c) : coeff(std::move(c)) {}
  explicit CoefficientSeries(const std::vector<double>& c) {
    coeff.reserve(c.size());
    for (double x : c) coeff.emplace_back(x, 0.0);
  }

  std::size_t size() const { return coeff.size(); }
  Complex& operator[](std::size_t n) { return coeff[n]; }
  const Complex& operator[](std::size_t n) const { return coeff[n]; }

  // Largest |c_n|; 0 for an empty series.
  double max_abs() const;
  // True when every imaginary part is below tol * max_abs().
  bool is_real(double tol = 1e-10) const;
  void require_finite() const;
};

enum class SingularityKind { Algebraic, Logarithmic };

// One singular term: M (z1 - z)^k, or M log(z1 - z) for the logarithmic kind.
struct Singularity {
  SingularityKind kind = SingularityKind::Algebraic;
  double order = 0.0;  // k; meaningful for Algebraic only
  Complex location{0.0, 0.0};
  Complex magnitude{0.0, 0.0};

  static Singularity algebraic(double k, Complex z, Complex m) {
    return Singularity{SingularityKind::Algebraic, k, z, m};
  }
  static Singularity logarithmic(Complex z, Complex m) {
    return Singularity{SingularityKind::Logarithmic, 0.0, z, m};
  }
  bool is_log() const { return kind == SingularityKind::Logarithmic; }
};

struct SingularityModel {
  std::vector<Singularity> terms;  // kept sorted by |location| ascending
  Complex constant_offset{0.0, 0.0};

  void add(const Singularity& s);
  void sort_terms();
  // Smallest |location| over terms; +inf when empty.
  double min_location_abs() const;
};

// Consecutive-coefficient ratios R_n = c_{n+1}/c_n and D_n = R_{n+1}/R_n.
// Slots are absent where a divisor fails the zero guard.
struct RatioSequence {
  int start_index = 0;
  std::vector<std::optional<Complex>> R;  // R[n] for n = 0..N-1
  std::vector<std::optional<Complex>> D;  // D[n] for n = 0..N-2
  std::vector<int> guarded;               // indices n whose |c_n| failed the guard

  bool has_R(int n) const {
    return n >= 0 && n < static_cast<int>(R.size()) && R[n].has_value();
  }
  bool has_D(int n) const {
    return n >= 0 && n < static_cast<int>(D.size()) && D[n].has_value();
  }
};

}  // namespace singrec

#endif
