// Command-line front end: direct-problem synthesis, the inverse-analysis
// pipeline, Domb-Sykes plot data, Hilbert completion, complement models.
//
// Exit codes: 0 success, 2 input error, 3 no model accepted, 4 solver fault.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "singrec/asymptotic.hpp"
#include "singrec/boundary.hpp"
#include "singrec/complement.hpp"
#include "singrec/io.hpp"
#include "singrec/pipeline.hpp"
#include "singrec/series.hpp"

namespace {

using namespace singrec;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoModel = 3;
constexpr int kExitSolverFault = 4;

int classify(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InputError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NonEquispacedGrid:
    case ErrorCode::AliasingBound:
      return kExitInput;
    default:
      return kExitSolverFault;
  }
}

CoefficientSeries series_from_input(const LoadedInput& in, double a0,
                                    int n_max) {
  if (in.kind == InputKind::Coefficients) {
    if (n_max >= 0 && static_cast<int>(in.series.size()) > n_max + 1) {
      CoefficientSeries cut;
      cut.coeff.assign(in.series.coeff.begin(),
                       in.series.coeff.begin() + n_max + 1);
      return cut;
    }
    return in.series;
  }
  BoundarySamples samples = in.samples;
  if (in.kind == InputKind::BoundaryVOnly)
    samples = hilbert_complete(samples, a0);
  int N = static_cast<int>(samples.size()) / 2 - 1;
  if (n_max >= 0) N = std::min(N, n_max);
  return fourier_coefficients(samples, N);
}

int cmd_synth(const std::string& model_path, int N, int sample_count,
              const std::string& out_path, const std::string& samples_out) {
  const SingularityModel model = read_model_file(model_path);
  const CoefficientSeries series = synthesize_series(model, N);
  std::ostringstream os;
  write_coefficients(os, series);
  write_text_file(out_path, os.str());
  if (!samples_out.empty()) {
    const BoundarySamples trace =
        boundary_trace(model, static_cast<std::size_t>(sample_count));
    std::ostringstream bs;
    write_boundary(bs, trace);
    write_text_file(samples_out, bs.str());
  }
  return kExitOk;
}

int cmd_analyze(const std::vector<std::string>& inputs, double a0, int n_max,
                const AnalyzeOptions& opts, const std::string& format,
                const std::string& out_path) {
  int worst = kExitOk;
  for (const std::string& path : inputs) {
    const LoadedInput in = load_input_file(path);
    const CoefficientSeries series = series_from_input(in, a0, n_max);
    const AnalysisReport report = analyze(series, opts, path);
    const std::string rendered =
        format == "text" ? report_to_text(report) : report_to_json(report);
    if (out_path.empty()) {
      std::cout << rendered << '\n';
    } else {
      write_text_file(inputs.size() == 1 ? out_path : out_path + "." + path,
                      rendered);
    }
    if (!report.model) worst = std::max(worst, kExitNoModel);
  }
  return worst;
}

void write_svg(const std::string& path, const std::vector<double>& xs,
               const std::vector<double>& Rs, const std::vector<double>& fit) {
  const int W = 640, H = 480, margin = 60;
  double xmax = 0.0, ylo = Rs.empty() ? 0.0 : Rs[0], yhi = ylo;
  for (double x : xs) xmax = std::max(xmax, x);
  for (double y : Rs) {
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  for (double y : fit) {
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  if (yhi <= ylo) yhi = ylo + 1.0;
  if (xmax <= 0.0) xmax = 1.0;
  auto px = [&](double x) { return margin + x / xmax * (W - 2 * margin); };
  auto py = [&](double y) {
    return H - margin - (y - ylo) / (yhi - ylo) * (H - 2 * margin);
  };
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
     << H << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<line x1='" << margin << "' y1='" << H - margin << "' x2='"
     << W - margin << "' y2='" << H - margin << "' stroke='black'/>\n";
  os << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin
     << "' y2='" << H - margin << "' stroke='black'/>\n";
  os << "<text x='" << W / 2 << "' y='" << H - 15
     << "' text-anchor='middle'>1/n</text>\n";
  os << "<text x='20' y='" << H / 2 << "' transform='rotate(-90 20 "
     << H / 2 << ")' text-anchor='middle'>R</text>\n";
  os << "<polyline fill='none' stroke='steelblue' points='";
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << px(xs[i]) << ',' << py(fit[i]) << ' ';
  os << "'/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << "<circle cx='" << px(xs[i]) << "' cy='" << py(Rs[i])
       << "' r='2.4' fill='black'/>\n";
  os << "</svg>\n";
  write_text_file(path, os.str());
}

int cmd_plot_data(const std::string& input, double a0, int n_max, int window,
                  const std::string& out_prefix, const std::string& svg_path,
                  const PeelOptions& peel_opts) {
  const LoadedInput in = load_input_file(input);
  const CoefficientSeries series = series_from_input(in, a0, n_max);

  // per-stage residual series from the peeled model prefix; an explicit
  // --window skips peeling and fits the raw ratios at that window
  std::vector<CoefficientSeries> stage_inputs;
  std::vector<DombSykesFit> stage_fits;
  if (window < 0) {
    try {
      auto [model, trace] = peel(series, peel_opts);
      CoefficientSeries cur = series;
      for (const PeelStage& st : trace.stages) {
        stage_inputs.push_back(cur);
        stage_fits.push_back(st.fit);
        SingularityModel one;
        one.add(st.identified);
        if (st.identified.is_log())
          one.constant_offset =
              -st.identified.magnitude * std::log(st.identified.location);
        const CoefficientSeries sub =
            synthesize_series(one, static_cast<int>(cur.size()) - 1);
        for (std::size_t n = 0; n < cur.size(); ++n) cur.coeff[n] -= sub[n];
      }
    } catch (const Error&) {
      // fall through to a single plain-fit stage
    }
  }
  if (stage_inputs.empty()) {
    stage_inputs.push_back(series);
    const RatioSequence rs = compute_ratios(series);
    stage_fits.push_back(
        domb_sykes_fit(rs, window >= 0 ? window : rs.start_index));
  }

  for (std::size_t s = 0; s < stage_inputs.size(); ++s) {
    const RatioSequence rs = compute_ratios(stage_inputs[s]);
    const DombSykesFit& fit = stage_fits[s];
    std::ostringstream os;
    os << "# stage " << (s + 1) << ": intercept=" << format_number(fit.intercept)
       << ", slope0=" << format_number(fit.slope0)
       << ", k_est=" << format_number(fit.k_est)
       << ", z_est=" << format_number(fit.z_est)
       << ", q1=" << format_number(fit.q1)
       << ", window_start=" << fit.window_start
       << ", straight=" << (fit.straight ? "true" : "false") << '\n';
    os << "n,inv_n,R,fit_R\n";
    std::vector<double> xs, Rs, fits;
    for (int n = 0; n < static_cast<int>(rs.R.size()); ++n) {
      if (!rs.has_R(n)) continue;
      const double x = 1.0 / (n + 1.0);
      const double fitv = (fit.p0 + fit.p1 * x) / (1.0 + fit.q1 * x);
      os << n << ',' << format_number(x) << ','
         << format_number(rs.R[n]->real()) << ',' << format_number(fitv)
         << '\n';
      xs.push_back(x);
      Rs.push_back(rs.R[n]->real());
      fits.push_back(fitv);
    }
    const std::string path =
        out_prefix + "_stage" + std::to_string(s + 1) + ".csv";
    write_text_file(path, os.str());
    if (!svg_path.empty() && s == 0) write_svg(svg_path, xs, Rs, fits);
  }
  return kExitOk;
}

int cmd_hilbert_complete(const std::string& input, double a0,
                         const std::string& out_path) {
  std::ifstream is(input);
  if (!is) throw Error(ErrorCode::InputError, "cannot open '" + input + "'");
  const BoundaryInput b = read_boundary(is);
  if (!b.samples.is_real())
    throw Error(ErrorCode::NotRealSeries,
                "hilbert-complete expects a single real conjugate function");
  const BoundarySamples f = hilbert_complete(b.samples, a0);
  std::ostringstream os;
  write_boundary(os, f);
  write_text_file(out_path, os.str());
  return kExitOk;
}

int cmd_complement(const std::string& model_path, const std::string& out_path) {
  const SingularityModel model = read_model_file(model_path);
  const ComplementModel comp = complement_from_model(model);
  write_text_file(out_path, complement_to_json(comp));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exterior-singularity analysis of unit-circle boundary data"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "synthesize coefficients from a model");
  std::string synth_model, synth_out, synth_samples_out;
  int synth_n = 16, synth_samples = 256;
  synth->add_option("--model", synth_model, "model JSON file")->required();
  synth->add_option("--n", synth_n, "highest coefficient order N");
  synth->add_option("--out", synth_out, "coefficient CSV path")->required();
  synth->add_option("--samples", synth_samples, "boundary grid size M");
  synth->add_option("--samples-out", synth_samples_out,
                    "also write the boundary trace CSV");

  // analyze
  auto* an = app.add_subcommand("analyze", "recover the singularity model");
  std::vector<std::string> an_inputs;
  std::string an_format = "json", an_out;
  double an_a0 = 0.0, an_snap = 0.05, an_restol = 1e-6;
  int an_nmax = -1, an_stages = 8;
  an->add_option("inputs", an_inputs, "coefficient or boundary CSV files")
      ->required();
  an->add_option("--a0", an_a0, "mean of Re f for v-only input");
  an->add_option("--n-max", an_nmax, "cap on the coefficient order used");
  an->add_option("--snap-tol", an_snap, "parameter snapping tolerance");
  an->add_option("--residual-tol", an_restol, "acceptance residual threshold");
  an->add_option("--stages", an_stages, "peeling stage cap");
  an->add_option("--format", an_format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  an->add_option("--out", an_out, "write the report here instead of stdout");

  // plot-data
  auto* plot = app.add_subcommand("plot-data", "emit Domb-Sykes plot data");
  std::string plot_input, plot_out = "plot", plot_svg;
  double plot_a0 = 0.0;
  int plot_nmax = -1, plot_window = -1, plot_stages = 8;
  plot->add_option("input", plot_input, "coefficient or boundary CSV")
      ->required();
  plot->add_option("--a0", plot_a0, "mean of Re f for v-only input");
  plot->add_option("--n-max", plot_nmax, "cap on the coefficient order used");
  plot->add_option("--out", plot_out, "output path prefix");
  plot->add_option("--svg", plot_svg, "also render an SVG scatter+fit");
  plot->add_option("--window", plot_window, "fit window start (default auto)");
  plot->add_option("--stages", plot_stages, "peeling stage cap");

  // hilbert-complete
  auto* hc = app.add_subcommand("hilbert-complete",
                                "complete f from one conjugate function");
  std::string hc_input, hc_out;
  double hc_a0 = 0.0;
  hc->add_option("input", hc_input, "theta,v CSV")->required();
  hc->add_option("--a0", hc_a0, "mean of Re f (not recoverable from v)");
  hc->add_option("--out", hc_out, "output boundary CSV")->required();

  // complement
  auto* comp = app.add_subcommand("complement",
                                  "complement model from an algebraic model");
  std::string comp_model, comp_out;
  comp->add_option("model", comp_model, "model JSON file")->required();
  comp->add_option("--out", comp_out, "output JSON path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth)
      return cmd_synth(synth_model, synth_n, synth_samples, synth_out,
                       synth_samples_out);
    if (*an) {
      AnalyzeOptions opts;
      opts.single.snap_tol = an_snap;
      opts.accept_residual = an_restol;
      opts.pair.accept_residual = std::max(an_restol, opts.pair.accept_residual);
      opts.peel_opts.stage_cap = an_stages;
      return cmd_analyze(an_inputs, an_a0, an_nmax, opts, an_format, an_out);
    }
    if (*plot) {
      PeelOptions popts;
      popts.stage_cap = plot_stages;
      return cmd_plot_data(plot_input, plot_a0, plot_nmax, plot_window,
                           plot_out, plot_svg, popts);
    }
    if (*hc) return cmd_hilbert_complete(hc_input, hc_a0, hc_out);
    if (*comp) return cmd_complement(comp_model, comp_out);
  } catch (const Error& e) {
    std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what()
              << '\n';
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "fault: " << e.what() << '\n';
    return kExitSolverFault;
  }
  return kExitOk;
}
