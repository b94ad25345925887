#include "lacfit/geometry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "lacfit/errors.hpp"

namespace lacfit {

namespace {
constexpr double kStepRelTol = 1e-6;
}

DiscreteCurve::DiscreteCurve(std::vector<Vec2> points, double step) {
  if (points.size() < 2) {
    throw std::invalid_argument("discrete curve needs at least 2 points");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("discrete curve step must be positive");
  }
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double len = norm(points[i + 1] - points[i]);
    if (std::abs(len - step) > kStepRelTol * step) {
      throw std::invalid_argument(
          "discrete curve step is not constant at segment " + std::to_string(i) +
          ": |" + std::to_string(len) + " - " + std::to_string(step) + "| exceeds tolerance");
    }
  }
  points_ = std::move(points);
  step_ = step;
}

DiscreteCurve DiscreteCurve::unchecked(std::vector<Vec2> points, double step) {
  if (points.size() < 2 || !(step > 0.0)) {
    throw std::invalid_argument("discrete curve needs at least 2 points and a positive step");
  }
  DiscreteCurve c;
  c.points_ = std::move(points);
  c.step_ = step;
  return c;
}

std::pair<Vec2, Vec2> DiscreteCurve::bounds() const {
  Vec2 lo = points_.front();
  Vec2 hi = points_.front();
  for (const Vec2& p : points_) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  return {lo, hi};
}

double DiscreteCurve::bounds_diagonal() const {
  const auto [lo, hi] = bounds();
  return norm(hi - lo);
}

std::string_view to_string(CanonicalTransform t) {
  switch (t) {
    case CanonicalTransform::Identity: return "identity";
    case CanonicalTransform::Reverse: return "reverse";
    case CanonicalTransform::Reflect: return "reflect";
    case CanonicalTransform::ReflectReverse: return "reflect_reverse";
  }
  return "identity";
}

std::vector<Vec2> apply_transform(const std::vector<Vec2>& points, CanonicalTransform t) {
  std::vector<Vec2> out = points;
  if (t == CanonicalTransform::Reverse || t == CanonicalTransform::ReflectReverse) {
    std::reverse(out.begin(), out.end());
  }
  if (t == CanonicalTransform::Reflect || t == CanonicalTransform::ReflectReverse) {
    for (Vec2& p : out) {
      std::swap(p.x, p.y);
    }
  }
  return out;
}

DiscreteCurve apply_transform(const DiscreteCurve& c, CanonicalTransform t) {
  // Reversal and coordinate swap preserve chord lengths bit for bit.
  return DiscreteCurve::unchecked(apply_transform(c.points(), t), c.step());
}

}  // namespace lacfit
