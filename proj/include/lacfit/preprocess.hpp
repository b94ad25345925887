#pragma once

#include <cstddef>
#include <vector>

#include "lacfit/geometry.hpp"

namespace lacfit {

/// Noise-reduction loop settings. max_control_points = 0 means "up to N".
struct SmoothingSettings {
  double eta = 1e-3;
  std::size_t max_control_points = 0;
  std::size_t growth = 1;
};

/// Priority-ordered Ramer-Douglas-Peucker refinement: both endpoints plus
/// the points of maximum perpendicular deviation, added one at a time, so
/// the selection for n_keep is a superset of the one for n_keep - 1.
std::vector<Vec2> rdp_select(const std::vector<Vec2>& points, std::size_t n_keep);
std::vector<Vec2> rdp_select(const DiscreteCurve& c, std::size_t n_keep);

/// Interpolating natural cubic spline through the control points, walked
/// into n_points samples of exact consecutive chord `step`. The first output
/// point equals control[0]. Throws LengthDeficitError if the spline is short.
DiscreteCurve spline_resample(const std::vector<Vec2>& control, std::size_t n_points,
                              double step);

/// Normalized residual (1/L^2) sum |smoothed_n - raw_n| h with L = (N-1) h.
double residual(const DiscreteCurve& smoothed, const std::vector<Vec2>& raw);

struct SmoothResult {
  DiscreteCurve curve;
  double residual = 0.0;
  std::size_t control_points = 0;
  bool below_threshold = false;
};

/// Decimate / spline / resample, growing the control-point budget from 3
/// until the residual drops to eta (or the budget is exhausted, in which
/// case the best effort comes back with below_threshold = false).
SmoothResult smooth(const std::vector<Vec2>& raw, double step,
                    const SmoothingSettings& settings = {});
SmoothResult smooth(const DiscreteCurve& raw, const SmoothingSettings& settings = {});

struct CurveSegment {
  std::size_t first = 0;  ///< inclusive point index
  std::size_t last = 0;   ///< inclusive point index
  CanonicalTransform transform = CanonicalTransform::Identity;
};

struct SegmentationResult {
  std::vector<CurveSegment> segments;
};

/// Split at curvature sign changes and at strict local extrema of |kappa|,
/// keep pieces with at least 5 points, and attach the transform that makes
/// each piece's curvature positive and decreasing. Pieces that still fail
/// canonicalization (constant curvature, say) are dropped.
SegmentationResult segment_monotone(const DiscreteCurve& c);

/// Sub-curve over the inclusive point range [first, last].
DiscreteCurve extract(const DiscreteCurve& c, std::size_t first, std::size_t last);

}  // namespace lacfit
