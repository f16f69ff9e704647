#include "singrec/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace singrec {

using nlohmann::json;

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double json_number(double x) {
  // numeric output carries 12 significant digits everywhere, JSON included
  return std::strtod(format_number(x).c_str(), nullptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r' && c != ' ' && c != '\t') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InputError, "bad numeric field '" + s + "'");
  }
}

json complex_to_json(const Complex& c) {
  return json{{"re", json_number(c.real())}, {"im", json_number(c.imag())}};
}

Complex complex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw Error(ErrorCode::InputError, "complex value needs re and im fields");
  return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

}  // namespace

void write_coefficients(std::ostream& os, const CoefficientSeries& series) {
  os << "n,re,im\n";
  for (std::size_t n = 0; n < series.size(); ++n)
    os << n << ',' << format_number(series[n].real()) << ','
       << format_number(series[n].imag()) << '\n';
}

CoefficientSeries read_coefficients(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw Error(ErrorCode::InputError, "empty coefficient file");
  const auto header = split_csv_line(line);
  if (header.size() != 3 || header[0] != "n" || header[1] != "re" ||
      header[2] != "im")
    throw Error(ErrorCode::InputError, "expected header n,re,im");
  CoefficientSeries out;
  std::size_t expect = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 3)
      throw Error(ErrorCode::InputError, "expected 3 fields per row");
    if (static_cast<std::size_t>(parse_double(f[0])) != expect)
      throw Error(ErrorCode::InputError, "coefficient rows must run 0,1,2,...");
    out.coeff.emplace_back(parse_double(f[1]), parse_double(f[2]));
    ++expect;
  }
  out.require_finite();
  return out;
}

void write_boundary(std::ostream& os, const BoundarySamples& samples) {
  os << "theta,re,im\n";
  for (std::size_t j = 0; j < samples.size(); ++j)
    os << format_number(samples.theta(j)) << ','
       << format_number(samples.values[j].real()) << ','
       << format_number(samples.values[j].imag()) << '\n';
}

BoundaryInput read_boundary(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw Error(ErrorCode::InputError, "empty boundary file");
  const auto header = split_csv_line(line);
  bool v_only;
  if (header.size() == 3 && header[0] == "theta" && header[1] == "re" &&
      header[2] == "im") {
    v_only = false;
  } else if (header.size() == 2 && header[0] == "theta" && header[1] == "v") {
    v_only = true;
  } else {
    throw Error(ErrorCode::InputError,
                "expected header theta,re,im or theta,v");
  }
  std::vector<double> thetas;
  std::vector<Complex> values;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != (v_only ? 2u : 3u))
      throw Error(ErrorCode::InputError, "wrong field count in boundary row");
    thetas.push_back(parse_double(f[0]));
    values.emplace_back(parse_double(f[1]),
                        v_only ? 0.0 : parse_double(f[2]));
  }
  const std::size_t M = thetas.size();
  if (M < 8 || M % 2 != 0)
    throw Error(ErrorCode::InputError, "boundary grid needs M >= 8 and even");
  for (std::size_t j = 0; j < M; ++j) {
    const double expect = BoundarySamples::theta(j, M);
    if (std::abs(thetas[j] - expect) > 1e-9)
      throw Error(ErrorCode::NonEquispacedGrid,
                  "grid must be theta_j = -pi + 2 pi j / M");
  }
  return BoundaryInput{BoundarySamples(std::move(values)), v_only};
}

std::string model_to_json(const SingularityModel& model) {
  json terms = json::array();
  for (const Singularity& s : model.terms) {
    json t;
    t["kind"] = s.is_log() ? "logarithmic" : "algebraic";
    if (!s.is_log()) t["k"] = s.order;
    t["location"] = complex_to_json(s.location);
    t["magnitude"] = complex_to_json(s.magnitude);
    terms.push_back(t);
  }
  json j;
  j["constant_offset"] = complex_to_json(model.constant_offset);
  j["terms"] = terms;
  return j.dump(2);
}

SingularityModel model_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InputError, std::string("bad model JSON: ") + e.what());
  }
  SingularityModel model;
  if (j.contains("constant_offset"))
    model.constant_offset = complex_from_json(j.at("constant_offset"));
  if (!j.contains("terms") || !j.at("terms").is_array())
    throw Error(ErrorCode::InputError, "model JSON needs a terms array");
  for (const json& t : j.at("terms")) {
    const std::string kind = t.value("kind", "algebraic");
    const Complex loc = complex_from_json(t.at("location"));
    const Complex mag = complex_from_json(t.at("magnitude"));
    if (kind == "logarithmic") {
      model.terms.push_back(Singularity::logarithmic(loc, mag));
    } else if (kind == "algebraic") {
      if (!t.contains("k"))
        throw Error(ErrorCode::InputError, "algebraic term needs k");
      model.terms.push_back(
          Singularity::algebraic(t.at("k").get<double>(), loc, mag));
    } else {
      throw Error(ErrorCode::InputError, "unknown term kind '" + kind + "'");
    }
  }
  model.sort_terms();
  return model;
}

std::string complement_to_json(const ComplementModel& model) {
  json terms = json::array();
  for (const ComplementModel::Term& t : model.terms) {
    terms.push_back(json{{"magnitude", complex_to_json(t.magnitude)},
                         {"outer_location", complex_to_json(t.outer_location)},
                         {"k", json_number(t.order)}});
  }
  json interior = json::array();
  for (const Complex& z : model.interior_singularities)
    interior.push_back(complex_to_json(z));
  json j;
  j["form"] = "F(z) = sum m_j (w_j - 1/z)^{k_j} + offset";
  j["terms"] = terms;
  j["offset"] = complex_to_json(model.offset);
  j["interior_singularities"] = interior;
  j["origin_singular"] = model.origin_singular;
  return j.dump(2);
}

LoadedInput load_input_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::InputError, "cannot open '" + path + "'");
  std::string header;
  if (!std::getline(is, header))
    throw Error(ErrorCode::InputError, "empty input file");
  is.seekg(0);
  const auto fields = split_csv_line(header);
  LoadedInput out{InputKind::Coefficients, {}, {}};
  if (!fields.empty() && fields[0] == "n") {
    out.kind = InputKind::Coefficients;
    out.series = read_coefficients(is);
  } else if (!fields.empty() && fields[0] == "theta") {
    BoundaryInput b = read_boundary(is);
    out.kind = b.v_only ? InputKind::BoundaryVOnly : InputKind::Boundary;
    out.samples = std::move(b.samples);
  } else {
    throw Error(ErrorCode::InputError,
                "unrecognized header; expected n,re,im or theta,...");
  }
  return out;
}

CoefficientSeries read_coefficients_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::InputError, "cannot open '" + path + "'");
  return read_coefficients(is);
}

SingularityModel read_model_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::InputError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return model_from_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::InputError, "cannot write '" + path + "'");
  os << text;
}

}  // namespace singrec
