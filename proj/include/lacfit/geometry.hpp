#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace lacfit {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator*(double c, Vec2 v) { return {c * v.x, c * v.y}; }
constexpr Vec2 operator*(Vec2 v, double c) { return c * v; }
constexpr Vec2 operator/(Vec2 v, double c) { return {v.x / c, v.y / c}; }
constexpr Vec2& operator+=(Vec2& a, Vec2 b) { a = a + b; return a; }
constexpr Vec2& operator-=(Vec2& a, Vec2 b) { a = a - b; return a; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// 2D cross product det(a, b) = a.x b.y - a.y b.x.
constexpr double det(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// Counterclockwise quarter turn.
constexpr Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

inline double norm(Vec2 v) { return std::sqrt(v.x * v.x + v.y * v.y); }

/// Rotation by a fixed angle, cos/sin evaluated once.
struct Rot2 {
  double c = 1.0;
  double s = 0.0;
  explicit Rot2(double angle) : c(std::cos(angle)), s(std::sin(angle)) {}
  Vec2 operator()(Vec2 v) const { return {c * v.x - s * v.y, s * v.x + c * v.y}; }
};

/// Ordered planar point sequence with constant step size h.
///
/// The checked constructor validates the equal-chord invariant to a relative
/// tolerance of 1e-6. Raw measurement data (noisy, non-constant step) goes
/// through `unchecked`, which preserves the nominal step for the formulas
/// that need it but skips validation.
class DiscreteCurve {
 public:
  DiscreteCurve(std::vector<Vec2> points, double step);
  static DiscreteCurve unchecked(std::vector<Vec2> points, double step);

  std::size_t size() const { return points_.size(); }
  double step() const { return step_; }
  const std::vector<Vec2>& points() const { return points_; }
  const Vec2& operator[](std::size_t i) const { return points_[i]; }
  const Vec2& front() const { return points_.front(); }
  const Vec2& back() const { return points_.back(); }

  /// Polyline length (N-1) h.
  double length() const { return static_cast<double>(points_.size() - 1) * step_; }

  /// Axis-aligned bounding box as (min corner, max corner).
  std::pair<Vec2, Vec2> bounds() const;
  double bounds_diagonal() const;

 private:
  DiscreteCurve() = default;
  std::vector<Vec2> points_;
  double step_ = 0.0;
};

/// The four curve maps that make a sign-constant, monotone curvature
/// positive and decreasing: identity, s -> L-s, (x,y) -> (y,x), and both.
/// Each one is an involution.
enum class CanonicalTransform { Identity, Reverse, Reflect, ReflectReverse };

std::string_view to_string(CanonicalTransform t);

DiscreteCurve apply_transform(const DiscreteCurve& c, CanonicalTransform t);
std::vector<Vec2> apply_transform(const std::vector<Vec2>& points, CanonicalTransform t);

}  // namespace lacfit
