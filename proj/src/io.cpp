#include "lacfit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lacfit/errors.hpp"

namespace lacfit {

namespace {

double parse_double(std::string_view field, const std::string& context) {
  // Trim surrounding whitespace; from_chars is strict about the rest.
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
    field.remove_prefix(1);
  }
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("bad number '" + std::string(field) + "' " + context);
  }
  return value;
}

}  // namespace

std::vector<Vec2> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::vector<Vec2> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      continue;
    }
    const auto comma = line.find(',');
    const std::string context = "at line " + std::to_string(line_no) + " of " + path.string();
    if (comma == std::string::npos) {
      throw ParseError("missing comma " + context);
    }
    Vec2 p;
    p.x = parse_double(std::string_view(line).substr(0, comma), context);
    p.y = parse_double(std::string_view(line).substr(comma + 1), context);
    points.push_back(p);
  }
  if (points.size() < 2) {
    throw ParseError("'" + path.string() + "' holds fewer than 2 points");
  }
  return points;
}

std::string format_points_csv(const std::vector<Vec2>& points) {
  std::string out;
  out.reserve(points.size() * 48);
  char buf[80];
  for (const Vec2& p : points) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.x, p.y);
    out += buf;
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open '" + tmp.string() + "' for writing");
    }
    out << content;
    if (!out) {
      throw IoError("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move '" + tmp.string() + "' to '" + path.string() + "'");
  }
}

nlohmann::ordered_json theta_to_json(const ThetaParams& theta) {
  return {{"x0", theta.x0}, {"y0", theta.y0}, {"h", theta.h},     {"phi", theta.phi},
          {"z", theta.z},   {"s0", theta.s0}, {"alpha", theta.alpha},
          {"n_points", theta.n_points}};
}

nlohmann::ordered_json segment_params_to_json(const LacSegmentParams& p) {
  return {{"alpha", p.alpha}, {"S", p.scale}, {"s0", p.s0},  {"l", p.length},
          {"phi", p.phi},     {"x0", p.x0},   {"y0", p.y0}};
}

nlohmann::ordered_json recover_to_json(const RecoverResult& r) {
  nlohmann::ordered_json j;
  j["transform"] = to_string(r.guess.transform);
  j["theta_initial"] = theta_to_json(r.guess.theta);
  j["segment_params"] = segment_params_to_json(r.params);
  j["guess_clamped"] = r.guess.clamped;
  return j;
}

nlohmann::ordered_json fit_to_json(const FitOutcome& outcome) {
  nlohmann::ordered_json j;
  j["transform"] = to_string(outcome.report.transform);
  j["theta_initial"] = theta_to_json(outcome.report.theta_initial);
  j["theta_final"] = theta_to_json(outcome.report.theta_final);
  j["segment_params_initial"] = segment_params_to_json(outcome.params_initial);
  j["segment_params_final"] = segment_params_to_json(outcome.params_final);
  j["guess_clamped"] = outcome.guess.clamped;
  j["objective_initial"] = outcome.report.objective_initial();
  j["objective_final"] = outcome.report.objective_final();
  j["rms_distance"] = outcome.report.rms_distance;
  j["iterations"] = outcome.report.iterations();
  j["termination"] = to_string(outcome.report.termination);
  j["objective_trace"] = outcome.report.objective_trace;
  return j;
}

std::string render_svg(const std::vector<SvgPolyline>& polylines) {
  Vec2 lo{0.0, 0.0};
  Vec2 hi{1.0, 1.0};
  bool first = true;
  for (const SvgPolyline& line : polylines) {
    for (const Vec2& p : *line.points) {
      if (first) {
        lo = hi = p;
        first = false;
      }
      lo.x = std::min(lo.x, p.x);
      lo.y = std::min(lo.y, p.y);
      hi.x = std::max(hi.x, p.x);
      hi.y = std::max(hi.y, p.y);
    }
  }
  const double span_x = std::max(hi.x - lo.x, 1e-12);
  const double span_y = std::max(hi.y - lo.y, 1e-12);
  const double margin = 0.05 * std::max(span_x, span_y);
  const double width = 800.0;
  const double scale = width / (span_x + 2.0 * margin);
  const double height = (span_y + 2.0 * margin) * scale;
  const double stroke = std::max(1.0, 0.002 * width);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  char buf[64];
  for (const SvgPolyline& line : polylines) {
    svg << "  <polyline fill=\"none\" stroke=\"" << line.color << "\" stroke-width=\""
        << stroke << "\" points=\"";
    for (const Vec2& p : *line.points) {
      const double sx = (p.x - lo.x + margin) * scale;
      const double sy = height - (p.y - lo.y + margin) * scale;
      std::snprintf(buf, sizeof(buf), "%.3f,%.3f ", sx, sy);
      svg << buf;
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lacfit
