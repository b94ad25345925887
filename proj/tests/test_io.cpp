#include <cstdio>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "lacfit/errors.hpp"
#include "lacfit/io.hpp"
#include "lacfit/synth.hpp"

using namespace lacfit;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("points csv round trip is lossless") {
  const std::vector<Vec2> pts{{0.1, -2.5e-7}, {1.0 / 3.0, 4.0}, {-1.7976931348623157e2, 0.0}};
  const auto path = temp_file("lacfit_roundtrip.csv");
  write_text_file(path, format_points_csv(pts));
  const std::vector<Vec2> back = read_points_csv(path);
  REQUIRE(back.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(back[i].x == pts[i].x);
    CHECK(back[i].y == pts[i].y);
  }
  std::filesystem::remove(path);
}

TEST_CASE("csv parse failures carry the line") {
  const auto path = temp_file("lacfit_bad.csv");
  {
    std::ofstream out(path);
    out << "0,0\n1 2\n";
  }
  CHECK_THROWS_AS(read_points_csv(path), ParseError);
  {
    std::ofstream out(path);
    out << "0,abc\n";
  }
  CHECK_THROWS_AS(read_points_csv(path), ParseError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_points_csv(path), IoError);
}

TEST_CASE("fit report json carries the documented fields") {
  const LacSegmentParams p{2.0, 1.0, 0.15, 0.8, 0.4, 1.0, -2.0};
  const DiscreteCurve target = sample_lac(p, 120);
  const FitOutcome outcome = fit(target);
  const nlohmann::ordered_json j = fit_to_json(outcome);

  for (const char* key :
       {"transform", "theta_initial", "theta_final", "segment_params_initial",
        "segment_params_final", "objective_initial", "objective_final", "rms_distance",
        "iterations", "termination", "objective_trace", "guess_clamped"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  for (const char* key : {"x0", "y0", "h", "phi", "z", "s0", "alpha", "n_points"}) {
    CAPTURE(key);
    CHECK(j["theta_final"].contains(key));
  }
  for (const char* key : {"alpha", "S", "s0", "l", "phi", "x0", "y0"}) {
    CAPTURE(key);
    CHECK(j["segment_params_final"].contains(key));
  }
  // phi is reported reduced into [0, 2pi) on the segment-parameter boundary.
  CHECK(j["segment_params_final"]["phi"].get<double>() >= 0.0);
  CHECK(j["segment_params_final"]["phi"].get<double>() < 6.2831853072);

  // Identical pipelines serialize identically, byte for byte.
  const FitOutcome again = fit(target);
  CHECK(fit_to_json(again).dump() == j.dump());
}

TEST_CASE("svg overlay renders one polyline per curve") {
  const std::vector<Vec2> a{{0.0, 0.0}, {1.0, 0.0}};
  const std::vector<Vec2> b{{0.0, 1.0}, {1.0, 1.0}};
  const std::string svg = render_svg({{&a, "#000000"}, {&b, "#ff0000"}});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("#000000") != std::string::npos);
  CHECK(svg.find("#ff0000") != std::string::npos);
  std::size_t count = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++count;
  }
  CHECK(count == 2);
}

TEST_CASE("write_text_file refuses unreachable targets") {
  CHECK_THROWS_AS(write_text_file("/nonexistent_dir_lacfit/x.json", "{}"), IoError);
}
