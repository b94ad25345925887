#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lacfit/acceptance.hpp"
#include "lacfit/errors.hpp"
#include "lacfit/fit.hpp"
#include "lacfit/io.hpp"
#include "lacfit/preprocess.hpp"
#include "lacfit/synth.hpp"

namespace {

using namespace lacfit;

double mean_chord(const std::vector<Vec2>& pts) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    acc += norm(pts[i + 1] - pts[i]);
  }
  return acc / static_cast<double>(pts.size() - 1);
}

std::vector<Vec2> parse_control_list(const std::string& text) {
  std::vector<Vec2> control;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t semi = text.find(';', pos);
    const std::string pair = text.substr(pos, semi == std::string::npos ? semi : semi - pos);
    const std::size_t comma = pair.find(',');
    if (comma == std::string::npos) {
      throw ParseError("bad control point '" + pair + "' (expected x,y;x,y;...)");
    }
    try {
      control.push_back({std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
    } catch (const std::exception&) {
      throw ParseError("bad control point '" + pair + "'");
    }
    if (semi == std::string::npos) {
      break;
    }
    pos = semi + 1;
  }
  return control;
}

struct CommonArgs {
  std::string input;
  std::string output;
  double step = 0.0;  // 0: infer from the data
};

DiscreteCurve load_curve(const CommonArgs& args) {
  const std::vector<Vec2> pts = read_points_csv(args.input);
  const double h = args.step > 0.0 ? args.step : mean_chord(pts);
  return DiscreteCurve(pts, h);
}

int run_smooth(const CommonArgs& args, double eta, const std::string& report_path) {
  const std::vector<Vec2> pts = read_points_csv(args.input);
  const double h = args.step > 0.0 ? args.step : mean_chord(pts);
  SmoothingSettings settings;
  settings.eta = eta;
  const SmoothResult result = smooth(pts, h, settings);

  nlohmann::ordered_json j;
  j["residual"] = result.residual;
  j["control_points"] = result.control_points;
  j["below_threshold"] = result.below_threshold;
  j["n_points"] = result.curve.size();
  j["step"] = result.curve.step();

  write_text_file(args.output, format_points_csv(result.curve.points()));
  if (!report_path.empty()) {
    write_text_file(report_path, j.dump(2) + "\n");
  }
  std::cout << j.dump() << "\n";
  return 0;
}

int run_segment(const CommonArgs& args) {
  const DiscreteCurve curve = load_curve(args);
  const SegmentationResult result = segment_monotone(curve);
  nlohmann::ordered_json j;
  j["n_points"] = curve.size();
  j["segments"] = nlohmann::ordered_json::array();
  for (const CurveSegment& s : result.segments) {
    j["segments"].push_back(
        {{"first", s.first}, {"last", s.last}, {"transform", to_string(s.transform)}});
  }
  write_text_file(args.output, j.dump(2) + "\n");
  std::cout << "segments: " << result.segments.size() << "\n";
  return 0;
}

int run_recover(const CommonArgs& args, std::optional<double> alpha_override) {
  const DiscreteCurve curve = load_curve(args);
  const RecoverResult result = recover(curve, alpha_override);
  write_text_file(args.output, recover_to_json(result).dump(2) + "\n");
  std::cout << "alpha: " << result.guess.theta.alpha
            << " transform: " << to_string(result.guess.transform) << "\n";
  return 0;
}

int run_fit(const CommonArgs& args, const FitOptions& options, std::string plot_path) {
  const DiscreteCurve curve = load_curve(args);
  const FitOutcome outcome = fit(curve, options);

  const DiscreteCurve guess_curve =
      reconstruct_in_input_frame(outcome.guess.theta, outcome.report.transform);
  const DiscreteCurve fit_curve =
      reconstruct_in_input_frame(outcome.report.theta_final, outcome.report.transform);

  if (plot_path.empty()) {
    plot_path = std::filesystem::path(args.output).replace_extension(".svg").string();
  }
  const std::string svg = render_svg({{&curve.points(), "#000000"},
                                      {&guess_curve.points(), "#0000ff"},
                                      {&fit_curve.points(), "#ff0000"}});
  write_text_file(args.output, fit_to_json(outcome).dump(2) + "\n");
  write_text_file(plot_path, svg);
  std::cout << "rms_distance: " << outcome.report.rms_distance
            << " termination: " << to_string(outcome.report.termination)
            << " iterations: " << outcome.report.iterations() << "\n";
  return 0;
}

struct SynthArgs {
  std::string kind = "lac";
  std::size_t n_points = 200;
  double step = 0.0;
  LacSegmentParams p{2.0, 1.0, 0.1, 1.0, 0.0, 0.0, 0.0};
  std::string control = "0,0;1,1;2,0";
  double noise = 0.0;
  std::uint64_t seed = 1;
};

int run_synth(const std::string& output, const SynthArgs& args) {
  DiscreteCurve curve = [&]() {
    if (args.kind == "lac") {
      return sample_lac(args.p, args.n_points);
    }
    BezierSpec spec;
    spec.control = parse_control_list(args.control);
    spec.n_points = args.n_points;
    spec.step = args.step;
    if (!(spec.step > 0.0)) {
      // Rough length from a dense polyline, shaved a little so the walk fits.
      double len = 0.0;
      Vec2 prev = bezier_point(spec.control, 0.0);
      for (int i = 1; i <= 1024; ++i) {
        const Vec2 cur = bezier_point(spec.control, i / 1024.0);
        len += norm(cur - prev);
        prev = cur;
      }
      spec.step = 0.995 * len / static_cast<double>(spec.n_points - 1);
    }
    return sample_bezier(spec);
  }();

  std::vector<Vec2> pts = curve.points();
  if (args.noise > 0.0) {
    pts = add_noise(curve, args.noise, args.seed);
  }
  write_text_file(output, format_points_csv(pts));
  std::cout << "points: " << pts.size() << " step: " << curve.step()
            << (args.noise > 0.0 ? " (noisy)" : "") << "\n";
  return 0;
}

int run_eval(const std::string& output) {
  const std::vector<CriterionResult> results = run_acceptance();
  std::cout << format_acceptance(results);
  if (!output.empty()) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const CriterionResult& r : results) {
      j.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
    }
    write_text_file(output, j.dump(2) + "\n");
  }
  for (const CriterionResult& r : results) {
    if (!r.passed) {
      return 1;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lacfit: fairing of planar discrete curves by log-aesthetic curve segments"};
  app.require_subcommand(1);

  CommonArgs common;
  double eta = 1e-3;
  std::string report_path;
  std::string plot_path;
  double box_fraction = 0.1;
  double alpha_override = 0.0;
  bool has_alpha_override = false;
  std::size_t max_iters = 5000;
  double grad_tol = 1e-8;
  SynthArgs synth_args;
  std::string eval_output;

  auto* smooth_cmd = app.add_subcommand("smooth", "noise reduction (decimate/spline/resample)");
  smooth_cmd->add_option("--input", common.input, "points CSV")->required();
  smooth_cmd->add_option("--output", common.output, "smoothed points CSV")->required();
  smooth_cmd->add_option("--eta", eta, "residual threshold (default 1e-3)");
  smooth_cmd->add_option("--step", common.step, "nominal step (default: mean chord)");
  smooth_cmd->add_option("--report", report_path, "optional JSON summary path");

  auto* segment_cmd = app.add_subcommand("segment", "split into monotone-curvature segments");
  segment_cmd->add_option("--input", common.input, "points CSV")->required();
  segment_cmd->add_option("--output", common.output, "segments JSON")->required();
  segment_cmd->add_option("--step", common.step, "nominal step (default: mean chord)");

  auto* recover_cmd = app.add_subcommand("recover", "recover the seven-parameter guess");
  recover_cmd->add_option("--input", common.input, "points CSV")->required();
  recover_cmd->add_option("--output", common.output, "report JSON")->required();
  recover_cmd->add_option("--step", common.step, "nominal step (default: mean chord)");
  recover_cmd->add_option("--alpha", alpha_override, "fix alpha by hand, skip its estimation")
      ->each([&](const std::string&) { has_alpha_override = true; });

  auto* fit_cmd = app.add_subcommand("fit", "recover then minimize; writes report and plot");
  fit_cmd->add_option("--input", common.input, "points CSV")->required();
  fit_cmd->add_option("--output", common.output, "report JSON")->required();
  fit_cmd->add_option("--step", common.step, "nominal step (default: mean chord)");
  fit_cmd->add_option("--alpha", alpha_override, "fix alpha by hand, skip its estimation")
      ->each([&](const std::string&) { has_alpha_override = true; });
  fit_cmd->add_option("--box-fraction", box_fraction, "box half-width fraction (default 0.1)");
  fit_cmd->add_option("--max-iters", max_iters, "optimizer iteration cap (default 5000)");
  fit_cmd->add_option("--grad-tol", grad_tol, "gradient stop tolerance (default 1e-8)");
  fit_cmd->add_option("--plot", plot_path, "overlay SVG path (default: output with .svg)");

  auto* synth_cmd = app.add_subcommand("synth", "emit synthetic test curves");
  synth_cmd->add_option("--output", common.output, "points CSV")->required();
  synth_cmd->add_option("--kind", synth_args.kind, "lac | bezier")
      ->check(CLI::IsMember({"lac", "bezier"}));
  synth_cmd->add_option("--n-points", synth_args.n_points, "sample count (default 200)");
  synth_cmd->add_option("--step", synth_args.step, "bezier step (default: auto)");
  synth_cmd->add_option("--alpha", synth_args.p.alpha, "lac shape parameter (default 2)");
  synth_cmd->add_option("--scale", synth_args.p.scale, "lac scale S (default 1)");
  synth_cmd->add_option("--s0", synth_args.p.s0, "lac arc shift (default 0.1)");
  synth_cmd->add_option("--length", synth_args.p.length, "lac basic length l (default 1)");
  synth_cmd->add_option("--phi", synth_args.p.phi, "lac rotation (default 0)");
  synth_cmd->add_option("--x0", synth_args.p.x0, "lac origin x (default 0)");
  synth_cmd->add_option("--y0", synth_args.p.y0, "lac origin y (default 0)");
  synth_cmd->add_option("--control", synth_args.control, "bezier control points x,y;x,y;...");
  synth_cmd->add_option("--noise", synth_args.noise, "perturbation amplitude (default 0)");
  synth_cmd->add_option("--seed", synth_args.seed, "noise seed (default 1)");

  auto* eval_cmd = app.add_subcommand("eval", "run the built-in verification suite");
  eval_cmd->add_option("--output", eval_output, "optional JSON results path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (smooth_cmd->parsed()) {
      return run_smooth(common, eta, report_path);
    }
    if (segment_cmd->parsed()) {
      return run_segment(common);
    }
    if (recover_cmd->parsed()) {
      return run_recover(common, has_alpha_override ? std::optional<double>(alpha_override)
                                                    : std::nullopt);
    }
    if (fit_cmd->parsed()) {
      FitOptions options;
      options.box_fraction = box_fraction;
      if (has_alpha_override) {
        options.alpha_override = alpha_override;
      }
      options.optimizer.max_iterations = max_iters;
      options.optimizer.grad_tol = grad_tol;
      return run_fit(common, options, plot_path);
    }
    if (synth_cmd->parsed()) {
      return run_synth(common.output, synth_args);
    }
    if (eval_cmd->parsed()) {
      return run_eval(eval_output);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CuspError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotLacSegmentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NoisyDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const LengthDeficitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const Error& e) {
    // feasibility, quadrature, domain: the numeric pipeline gave up
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
