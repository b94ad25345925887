#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lacfit/basic_lac.hpp"
#include "lacfit/geometry.hpp"

namespace lacfit {

struct BezierSpec {
  std::vector<Vec2> control;  ///< at least 3 points
  std::size_t n_points = 0;
  double step = 0.0;
};

/// N points on the continuous segment gamma_p with exact equal chords
/// h = S l / (N-1). Positions are accumulated by incremental quadrature of
/// the basic tangent, each chord located by bisection on the arc advance.
DiscreteCurve sample_lac(const LacSegmentParams& p, std::size_t n_points);

/// de Casteljau evaluation of a Bezier curve.
Vec2 bezier_point(const std::vector<Vec2>& control, double t);

/// Equal-chord samples of a Bezier curve; throws LengthDeficitError when the
/// curve is shorter than (N-1) h.
DiscreteCurve sample_bezier(const BezierSpec& spec);

/// Deterministic pseudo-random perturbation of the interior points, max norm
/// `amplitude`, endpoints fixed. Returns raw points (the step is no longer
/// constant) ready for the smoothing loop.
std::vector<Vec2> add_noise(const DiscreteCurve& c, double amplitude, std::uint64_t seed);

}  // namespace lacfit
