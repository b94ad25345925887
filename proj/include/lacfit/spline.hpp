#pragma once

#include <vector>

#include "lacfit/geometry.hpp"

namespace lacfit {

/// Interpolating cubic spline through 2D points, chord-length parameterized,
/// with not-a-knot boundaries (three control points fall back to the
/// interpolating quadratic).
class CubicSpline2D {
 public:
  explicit CubicSpline2D(const std::vector<Vec2>& control);

  Vec2 operator()(double t) const;
  Vec2 derivative(double t) const;

  double t_min() const { return 0.0; }
  double t_max() const { return knots_.back(); }

  /// Arc length of [t0, t1] by adaptive quadrature of |gamma'|.
  double arc_length(double t0, double t1, double tol = 1e-10) const;
  double total_length(double tol = 1e-10) const { return arc_length(0.0, t_max(), tol); }

 private:
  std::size_t segment_of(double t) const;

  std::vector<double> knots_;
  std::vector<Vec2> values_;
  std::vector<Vec2> second_;  // second derivatives at the knots
};

}  // namespace lacfit
