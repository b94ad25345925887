#include "lacfit/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lacfit/chord_walk.hpp"
#include "lacfit/errors.hpp"
#include "lacfit/rng.hpp"

namespace lacfit {

DiscreteCurve sample_lac(const LacSegmentParams& p, std::size_t n_points) {
  p.validate();
  if (n_points < 2) {
    throw std::invalid_argument("sample_lac: need at least 2 points");
  }
  const double h = p.euclidean_length() / static_cast<double>(n_points - 1);
  const double chord_basic = h / p.scale;  // target chord in basic units
  const double quad_tol = 1e-13 * chord_basic;
  const double chord_tol = 1e-12 * chord_basic;

  // Walking past s0 + l is capped only by the domain: the chord-arc defect
  // makes the last sample overshoot the nominal end by a sliver.
  double u_cap;
  if (p.alpha < 0.0) {
    u_cap = (kDomainMargin - 1.0) / p.alpha * (1.0 - 1e-9);
  } else {
    u_cap = p.s0 + p.length * static_cast<double>(n_points);
  }

  const Rot2 rot(p.phi);
  std::vector<Vec2> pts;
  pts.reserve(n_points);

  double u_cur = p.s0;
  Vec2 xi_cur = basic_lac_position(p.alpha, p.s0, 1e-13);
  pts.push_back(p.origin() + p.scale * rot(xi_cur));

  for (std::size_t k = 1; k < n_points; ++k) {
    const auto advance = [&](double du) -> Vec2 {
      return basic_lac_position_between(p.alpha, u_cur, u_cur + du, quad_tol);
    };
    // Chord <= arc, so du = chord_basic is a lower bracket.
    double lo = chord_basic;
    double hi = chord_basic;
    Vec2 inc = advance(hi);
    while (norm(inc) < chord_basic && u_cur + hi < u_cap) {
      lo = hi;
      hi = std::min(hi * 1.01, u_cap - u_cur);
      inc = advance(hi);
    }
    if (norm(inc) < chord_basic - chord_tol) {
      throw QuadratureError("sample_lac: segment leaves the maximal interval mid-walk");
    }
    for (int it = 0; it < 200 && std::abs(norm(inc) - chord_basic) > chord_tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      const Vec2 inc_mid = advance(mid);
      if (norm(inc_mid) < chord_basic) {
        lo = mid;
      } else {
        hi = mid;
        inc = inc_mid;
      }
    }
    u_cur += hi;
    xi_cur += inc;
    pts.push_back(p.origin() + p.scale * rot(xi_cur));
  }
  return DiscreteCurve(std::move(pts), h);
}

Vec2 bezier_point(const std::vector<Vec2>& control, double t) {
  std::vector<Vec2> work = control;
  for (std::size_t level = work.size() - 1; level > 0; --level) {
    for (std::size_t i = 0; i < level; ++i) {
      work[i] = (1.0 - t) * work[i] + t * work[i + 1];
    }
  }
  return work[0];
}

DiscreteCurve sample_bezier(const BezierSpec& spec) {
  if (spec.control.size() < 3) {
    throw std::invalid_argument("sample_bezier: need at least 3 control points");
  }
  if (spec.n_points < 2 || !(spec.step > 0.0)) {
    throw std::invalid_argument("sample_bezier: need n_points >= 2 and a positive step");
  }
  const auto pos = [&spec](double t) { return bezier_point(spec.control, t); };
  std::vector<Vec2> pts =
      equal_chord_walk(pos, 0.0, 1.0, spec.n_points, spec.step, 1e-12 * spec.step);
  return DiscreteCurve(std::move(pts), spec.step);
}

std::vector<Vec2> add_noise(const DiscreteCurve& c, double amplitude, std::uint64_t seed) {
  if (amplitude < 0.0) {
    throw std::invalid_argument("add_noise: amplitude must be nonnegative");
  }
  SplitMix64 rng(seed);
  std::vector<Vec2> pts = c.points();
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double angle = 2.0 * std::numbers::pi * rng.next_double();
    const double radius = amplitude * rng.next_double();
    pts[i] += radius * Vec2{std::cos(angle), std::sin(angle)};
  }
  return pts;
}

}  // namespace lacfit
