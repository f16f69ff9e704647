#ifndef SINGREC_IO_HPP
#define SINGREC_IO_HPP

#include <iosfwd>
#include <string>

#include "singrec/boundary.hpp"
#include "singrec/complement.hpp"
#include "singrec/types.hpp"

namespace singrec {

// All numeric output uses 12 significant digits.
std::string format_number(double x);
// The same rounding for numbers embedded in JSON documents.
double json_number(double x);

// Coefficient CSV, header "n,re,im".
void write_coefficients(std::ostream& os, const CoefficientSeries& series);
CoefficientSeries read_coefficients(std::istream& is);

// Boundary CSV, header "theta,re,im" (complex trace) or "theta,v" (one
// conjugate function). The grid must be theta_j = -pi + 2 pi j / M.
void write_boundary(std::ostream& os, const BoundarySamples& samples);
struct BoundaryInput {
  BoundarySamples samples;
  bool v_only = false;
};
BoundaryInput read_boundary(std::istream& is);

// Model JSON: {"constant_offset": {...}, "terms": [{kind,k,location,magnitude}]}
std::string model_to_json(const SingularityModel& model);
SingularityModel model_from_json(const std::string& text);

std::string complement_to_json(const ComplementModel& model);

enum class InputKind { Coefficients, Boundary, BoundaryVOnly };
struct LoadedInput {
  InputKind kind;
  CoefficientSeries series;     // for Coefficients
  BoundarySamples samples;      // for Boundary / BoundaryVOnly
};
// Sniffs the header line of a CSV file.
LoadedInput load_input_file(const std::string& path);

CoefficientSeries read_coefficients_file(const std::string& path);
SingularityModel read_model_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace singrec

#endif
