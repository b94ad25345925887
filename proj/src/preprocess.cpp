#include "lacfit/preprocess.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "lacfit/chord_walk.hpp"
#include "lacfit/errors.hpp"
#include "lacfit/initial_guess.hpp"
#include "lacfit/spline.hpp"

namespace lacfit {

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) {
    return norm(p - a);
  }
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return norm(p - (a + t * d));
}

struct Gap {
  double deviation;
  std::size_t lo;
  std::size_t hi;
  std::size_t argmax;
};

struct GapLess {
  bool operator()(const Gap& a, const Gap& b) const {
    if (a.deviation != b.deviation) return a.deviation < b.deviation;
    return a.lo > b.lo;  // deterministic tie-break: earlier gap wins
  }
};

/// Incremental RDP refinement over a fixed point sequence.
class RdpRefiner {
 public:
  explicit RdpRefiner(const std::vector<Vec2>& points) : points_(points) {
    selected_ = {0, points.size() - 1};
    push_gap(0, points.size() - 1);
  }

  /// Grow the selection to n_keep indices (sorted). Nested by construction.
  const std::vector<std::size_t>& grow_to(std::size_t n_keep) {
    while (selected_.size() < n_keep && !queue_.empty()) {
      const Gap g = queue_.top();
      queue_.pop();
      const auto pos = std::lower_bound(selected_.begin(), selected_.end(), g.argmax);
      selected_.insert(pos, g.argmax);
      push_gap(g.lo, g.argmax);
      push_gap(g.argmax, g.hi);
    }
    return selected_;
  }

 private:
  void push_gap(std::size_t lo, std::size_t hi) {
    if (hi <= lo + 1) {
      return;
    }
    Gap g{-1.0, lo, hi, lo + 1};
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double d = point_segment_distance(points_[i], points_[lo], points_[hi]);
      if (d > g.deviation) {
        g.deviation = d;
        g.argmax = i;
      }
    }
    queue_.push(g);
  }

  const std::vector<Vec2>& points_;
  std::vector<std::size_t> selected_;
  std::priority_queue<Gap, std::vector<Gap>, GapLess> queue_;
};

}  // namespace

std::vector<Vec2> rdp_select(const std::vector<Vec2>& points, std::size_t n_keep) {
  if (n_keep < 2 || n_keep > points.size()) {
    throw std::invalid_argument("rdp_select: n_keep must be in [2, N]");
  }
  RdpRefiner refiner(points);
  const auto& idx = refiner.grow_to(n_keep);
  std::vector<Vec2> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) {
    out.push_back(points[i]);
  }
  return out;
}

std::vector<Vec2> rdp_select(const DiscreteCurve& c, std::size_t n_keep) {
  return rdp_select(c.points(), n_keep);
}

DiscreteCurve spline_resample(const std::vector<Vec2>& control, std::size_t n_points,
                              double step) {
  if (control.size() < 3) {
    throw std::invalid_argument("spline_resample: need at least 3 control points");
  }
  const CubicSpline2D spline(control);
  const auto pos = [&spline](double t) { return spline(t); };
  std::vector<Vec2> pts =
      equal_chord_walk(pos, 0.0, spline.t_max(), n_points, step, 1e-12 * step);
  return DiscreteCurve(std::move(pts), step);
}

double residual(const DiscreteCurve& smoothed, const std::vector<Vec2>& raw) {
  if (smoothed.size() != raw.size()) {
    throw std::invalid_argument("residual: point counts differ");
  }
  const double h = smoothed.step();
  const double len = smoothed.length();
  double acc = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    acc += norm(smoothed[i] - raw[i]) * h;
  }
  return acc / (len * len);
}

namespace {

/// Spline through the control points, rescaled about the first one so an
/// N-step equal-chord walk with step h consumes the whole curve, then walked.
DiscreteCurve resample_scaled(const std::vector<Vec2>& control, std::size_t n_points,
                              double step) {
  const double needed = static_cast<double>(n_points - 1) * step;
  double factor = needed / CubicSpline2D(control).total_length();
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Vec2> scaled = control;
    for (Vec2& p : scaled) {
      p = control.front() + factor * (p - control.front());
    }
    try {
      return spline_resample(scaled, n_points, step);
    } catch (const LengthDeficitError&) {
      // Chord-arc defect: the walk needs slightly more arc than (N-1) h.
      factor *= 1.0 + 1e-3 * (1 << attempt);
    }
  }
  throw LengthDeficitError("equal-chord resample failed after rescaling");
}

}  // namespace

SmoothResult smooth(const std::vector<Vec2>& raw, double step,
                    const SmoothingSettings& settings) {
  if (raw.size() < 3) {
    throw std::invalid_argument("smooth: need at least 3 points");
  }
  if (!(settings.eta > 0.0)) {
    throw std::invalid_argument("smooth: eta must be positive");
  }
  const std::size_t n = raw.size();
  const std::size_t cap = std::clamp<std::size_t>(
      settings.max_control_points == 0 ? n : settings.max_control_points, 3, n);
  const std::size_t growth = std::max<std::size_t>(1, settings.growth);

  // Adding a control point can occasionally worsen the resample against the
  // raw points, so the loop keeps the best curve seen; when the threshold is
  // reached this is also the current one.
  RdpRefiner refiner(raw);
  std::optional<SmoothResult> best;
  std::size_t n_control = 3;
  while (true) {
    const auto& idx = refiner.grow_to(n_control);
    std::vector<Vec2> control;
    control.reserve(idx.size());
    for (std::size_t i : idx) {
      control.push_back(raw[i]);
    }
    DiscreteCurve candidate = resample_scaled(control, n, step);
    const double res = residual(candidate, raw);
    if (!best || res < best->residual) {
      best = SmoothResult{std::move(candidate), res, idx.size(), res <= settings.eta};
    }
    if (best->below_threshold || idx.size() >= cap) {
      return *best;
    }
    n_control = std::min(cap, n_control + growth);
  }
}

SmoothResult smooth(const DiscreteCurve& raw, const SmoothingSettings& settings) {
  return smooth(raw.points(), raw.step(), settings);
}

DiscreteCurve extract(const DiscreteCurve& c, std::size_t first, std::size_t last) {
  if (first >= last || last >= c.size()) {
    throw std::invalid_argument("extract: bad point range");
  }
  std::vector<Vec2> pts(c.points().begin() + static_cast<std::ptrdiff_t>(first),
                        c.points().begin() + static_cast<std::ptrdiff_t>(last) + 1);
  return DiscreteCurve::unchecked(std::move(pts), c.step());
}

SegmentationResult segment_monotone(const DiscreteCurve& c) {
  SegmentationResult result;
  if (c.size() < 5) {
    return result;
  }
  const CurvatureProfile prof = curvature_profile(c);
  const auto& kappa = prof.kappa;
  const std::size_t m = kappa.size();  // kappa[i] belongs to point i+1

  double max_abs = 0.0;
  for (double k : kappa) {
    max_abs = std::max(max_abs, std::abs(k));
  }
  const double flat_guard = 1e-12 * max_abs;

  // Cut after point p means pieces [.., p] and [p+1, ..].
  std::vector<std::size_t> cuts;
  int direction = 0;  // trend of |kappa|
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double a = kappa[i];
    const double b = kappa[i + 1];
    const bool sign_break = (a > 0.0) != (b > 0.0) || a == 0.0 || b == 0.0;
    if (sign_break) {
      cuts.push_back(i + 1);
      direction = 0;
      continue;
    }
    const double diff = std::abs(b) - std::abs(a);
    if (std::abs(b - a) <= flat_guard) {
      continue;  // rounding-noise plateau
    }
    const int d = diff > 0.0 ? 1 : -1;
    if (direction == 0) {
      direction = d;
    } else if (d != direction) {
      cuts.push_back(i + 1);  // strict local extremum of |kappa| at point i+1
      direction = 0;
    }
  }

  std::size_t start = 0;
  cuts.push_back(c.size() - 1);  // sentinel: final piece ends at the last point
  for (std::size_t cut : cuts) {
    const std::size_t end = cut;
    if (end > start && end - start + 1 >= 5) {
      try {
        const DiscreteCurve piece = extract(c, start, end);
        const CanonicalTransform tag = choose_canonical_transform(curvature_profile(piece));
        result.segments.push_back({start, end, tag});
      } catch (const Error&) {
        // Piece without usable monotone curvature; drop it.
      }
    }
    start = end + 1;
  }
  return result;
}

}  // namespace lacfit
