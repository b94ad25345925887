#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <vector>

#include <doctest.h>

#include "lacfit/errors.hpp"
#include "lacfit/initial_guess.hpp"
#include "lacfit/preprocess.hpp"
#include "lacfit/synth.hpp"
#include "oracles.hpp"

using namespace lacfit;

namespace {

std::vector<Vec2> corner_polyline() {
  // Dense samples along (0,0) -> (1,0) -> (1,1).
  std::vector<Vec2> pts;
  for (int i = 0; i <= 20; ++i) {
    pts.push_back({i / 20.0, 0.0});
  }
  for (int i = 1; i <= 20; ++i) {
    pts.push_back({1.0, i / 20.0});
  }
  return pts;
}

bool contains_point(const std::vector<Vec2>& set, Vec2 p) {
  return std::any_of(set.begin(), set.end(),
                     [&](Vec2 q) { return q.x == p.x && q.y == p.y; });
}

}  // namespace

TEST_CASE("rdp keeps endpoints and the max-deviation corner") {
  const std::vector<Vec2> line{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  const auto two = rdp_select(line, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].x == 0.0);
  CHECK(two[1].x == 2.0);

  const auto all = rdp_select(line, 3);
  CHECK(all.size() == 3);

  const std::vector<Vec2> corner = corner_polyline();
  const auto three = rdp_select(corner, 3);
  REQUIRE(three.size() == 3);
  // Exhaustive oracle: the interior pick must maximize deviation from the chord.
  double best = -1.0;
  Vec2 best_point{};
  for (std::size_t i = 1; i + 1 < corner.size(); ++i) {
    const double d = oracles::point_line_distance(corner[i], corner.front(), corner.back());
    if (d > best) {
      best = d;
      best_point = corner[i];
    }
  }
  CHECK(three[1].x == best_point.x);
  CHECK(three[1].y == best_point.y);
  CHECK(three[1].x == 1.0);  // the corner
  CHECK(three[1].y == 0.0);

  CHECK_THROWS_AS(rdp_select(line, 1), std::invalid_argument);
  CHECK_THROWS_AS(rdp_select(line, 4), std::invalid_argument);
}

TEST_CASE("rdp selections are nested as n_keep grows") {
  const BezierSpec spec{{{0.0, 0.0}, {0.8, 1.4}, {2.4, -0.6}, {3.0, 0.6}}, 80, 0.042};
  const std::vector<Vec2> pts = sample_bezier(spec).points();
  std::vector<Vec2> prev = rdp_select(pts, 2);
  for (std::size_t k = 3; k <= 12; ++k) {
    const std::vector<Vec2> cur = rdp_select(pts, k);
    CHECK(cur.size() == k);
    for (const Vec2& p : prev) {
      CHECK(contains_point(cur, p));
    }
    prev = cur;
  }
}

TEST_CASE("spline resample on collinear control points") {
  const std::vector<Vec2> control{{0.0, 0.0}, {1.0, 0.0}, {2.5, 0.0}, {4.0, 0.0}};
  const DiscreteCurve out = spline_resample(control, 11, 0.25);
  CHECK(out[0].x == 0.0);
  CHECK(out[0].y == 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(std::abs(out[i].y) <= 1e-12);
    CHECK(out[i].x == doctest::Approx(0.25 * static_cast<double>(i)).epsilon(1e-10));
  }
}

TEST_CASE("spline resample stays near an analytic circle") {
  const double r = 2.0;
  auto build = [r](double spacing_deg) {
    std::vector<Vec2> control;
    for (double a = 0.0; a <= 180.0; a += spacing_deg) {
      const double rad = a * std::numbers::pi / 180.0;
      control.push_back({r * std::cos(rad), r * std::sin(rad)});
    }
    return control;
  };
  auto worst_radius_error = [r](const DiscreteCurve& c) {
    double worst = 0.0;
    for (const Vec2& p : c.points()) {
      worst = std::max(worst, std::abs(norm(p) - r));
    }
    return worst;
  };
  const double e10 = worst_radius_error(spline_resample(build(10.0), 100, 0.06));
  const double e5 = worst_radius_error(spline_resample(build(5.0), 100, 0.06));
  const double e25 = worst_radius_error(spline_resample(build(2.5), 100, 0.06));
  const double knot_spacing = 2.0 * r * std::sin(10.0 * std::numbers::pi / 360.0);
  CHECK(e10 <= std::pow(knot_spacing, 4));
  // Interpolation error falls like spacing^4.
  CHECK(e10 / e5 >= 8.0);
  CHECK(e5 / e25 >= 8.0);
}

TEST_CASE("spline resample reports a length deficit") {
  const std::vector<Vec2> control{{0.0, 0.0}, {0.5, 0.1}, {1.0, 0.0}};
  CHECK_THROWS_AS(spline_resample(control, 200, 0.05), LengthDeficitError);
  CHECK_THROWS_AS(spline_resample({{0.0, 0.0}, {1.0, 0.0}}, 5, 0.1), std::invalid_argument);
}

TEST_CASE("residual formula") {
  const DiscreteCurve c({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}}, 1.0);
  CHECK(residual(c, c.points()) == 0.0);

  std::vector<Vec2> shifted = c.points();
  for (Vec2& p : shifted) {
    p.y += 0.5;
  }
  const double n = 4.0, d = 0.5, h = 1.0, len = 3.0;
  CHECK(residual(c, shifted) == doctest::Approx(n * d * h / (len * len)).epsilon(1e-12));

  // Independent reversed-order summation.
  std::vector<Vec2> noisy = c.points();
  noisy[1].y += 0.125;
  noisy[2].x -= 0.0625;
  double acc = 0.0;
  for (std::size_t i = noisy.size(); i-- > 0;) {
    acc += norm(c[i] - noisy[i]) * h;
  }
  CHECK(residual(c, noisy) == doctest::Approx(acc / (len * len)).epsilon(1e-12));

  CHECK_THROWS_AS(residual(c, std::vector<Vec2>{{0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("smooth terminates immediately on clean lines") {
  std::vector<Vec2> line;
  for (int i = 0; i < 40; ++i) {
    line.push_back({0.1 * i, 0.05 * i});
  }
  const double h = norm(Vec2{0.1, 0.05});
  const SmoothResult r = smooth(line, h);
  CHECK(r.control_points == 3);
  CHECK(r.below_threshold);
  CHECK(r.residual <= 1e-9);
  CHECK(r.curve.size() == line.size());
  CHECK(r.curve[0].x == line[0].x);  // first point preserved exactly
  CHECK(r.curve[0].y == line[0].y);

  SmoothingSettings lax;
  lax.eta = std::numeric_limits<double>::infinity();
  const SmoothResult one_pass = smooth(line, h, lax);
  CHECK(one_pass.control_points == 3);
}

TEST_CASE("smooth recovers a usable curvature profile from noise") {
  const LacSegmentParams p{2.0, 1.0, 0.15, 1.0, 0.4, 0.5, -0.3};
  const std::size_t n = 200;
  const DiscreteCurve clean = sample_lac(p, n);
  const double amplitude = 1e-3 * clean.length();
  const std::vector<Vec2> noisy = add_noise(clean, amplitude, 424242);

  CHECK_THROWS_AS(guess_alpha(curvature_profile(DiscreteCurve::unchecked(noisy, clean.step()))),
                  NoisyDataError);

  const SmoothResult sm = smooth(noisy, clean.step());
  CHECK(sm.below_threshold);
  CHECK(sm.residual <= 1e-3);
  CHECK(sm.curve.size() == n);
  CHECK(sm.curve.step() == clean.step());

  // Noiseless curvature is strictly monotone; the smoothed one must be again.
  const double alpha = guess_alpha(curvature_profile(sm.curve));
  CHECK(std::isfinite(alpha));

  // Endpoint contract: head exact, tail within one step.
  CHECK(sm.curve[0].x == noisy[0].x);
  CHECK(sm.curve[0].y == noisy[0].y);
  CHECK(norm(sm.curve[n - 1] - noisy[n - 1]) <= clean.step());
}

TEST_CASE("smooth residual is non-increasing along the refinement") {
  const LacSegmentParams p{2.0, 1.0, 0.15, 1.0, 0.4, 0.5, -0.3};
  const DiscreteCurve clean = sample_lac(p, 150);
  const std::vector<Vec2> noisy = add_noise(clean, 1e-3 * clean.length(), 7);
  SmoothingSettings tight;
  tight.eta = 1e-12;  // force the loop to run to a fixed budget
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t cap = 3; cap <= 12; ++cap) {
    tight.max_control_points = cap;
    const SmoothResult r = smooth(noisy, clean.step(), tight);
    CHECK(r.residual <= prev * (1.0 + 1e-9));
    prev = r.residual;
  }
}

TEST_CASE("segmentation by monotone curvature") {
  SUBCASE("an exact segment stays whole") {
    const LacSegmentParams p{2.0, 1.0, 0.1, 0.8, 0.3, 0.0, 0.0};
    const DiscreteCurve c = sample_lac(p, 100);
    const SegmentationResult r = segment_monotone(c);
    REQUIRE(r.segments.size() == 1);
    CHECK(r.segments[0].first == 0);
    CHECK(r.segments[0].last == c.size() - 1);
    CHECK(r.segments[0].transform == CanonicalTransform::Identity);
  }
  SUBCASE("an s-shaped bezier splits at the inflection") {
    const BezierSpec spec{{{0.0, 0.0}, {1.0, 2.0}, {2.0, -2.0}, {3.0, 0.0}}, 200, 0.0195};
    const DiscreteCurve c = sample_bezier(spec);
    // Sign-change oracle on the raw curvature data.
    const CurvatureProfile prof = curvature_profile(c);
    bool sign_change = false;
    for (std::size_t i = 0; i + 1 < prof.kappa.size(); ++i) {
      if ((prof.kappa[i] > 0.0) != (prof.kappa[i + 1] > 0.0)) {
        sign_change = true;
      }
    }
    CHECK(sign_change);
    const SegmentationResult r = segment_monotone(c);
    CHECK(r.segments.size() >= 2);
    for (std::size_t i = 1; i < r.segments.size(); ++i) {
      CHECK(r.segments[i].first > r.segments[i - 1].last);
    }
    // Every kept piece passes canonicalization with tag Identity afterwards.
    for (const CurveSegment& s : r.segments) {
      const DiscreteCurve piece = extract(c, s.first, s.last);
      const DiscreteCurve canon = apply_transform(piece, s.transform);
      CHECK(choose_canonical_transform(curvature_profile(canon)) ==
            CanonicalTransform::Identity);
    }
  }
  SUBCASE("a circle yields no usable segments") {
    std::vector<Vec2> pts;
    const double delta = 0.05;
    for (int k = 0; k < 80; ++k) {
      pts.push_back({std::cos(delta * k), std::sin(delta * k)});
    }
    const DiscreteCurve c(std::move(pts), 2.0 * std::sin(delta / 2.0));
    CHECK(segment_monotone(c).segments.empty());
  }
}
