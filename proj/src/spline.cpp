#include "lacfit/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lacfit/quadrature.hpp"

namespace lacfit {

namespace {

/// Second derivatives M_i of the interpolating cubic spline with not-a-knot
/// boundaries (third derivative continuous across the second and the
/// second-to-last knot). A natural end would pin the curvature to zero at
/// the boundary, which distorts curvature estimates right where the fairing
/// pipeline reads them.
std::vector<double> solve_second_derivatives(const std::vector<double>& t,
                                             const std::vector<double>& v) {
  const std::size_t n = t.size();
  std::vector<double> m(n, 0.0);
  if (n < 3) {
    return m;  // straight segment
  }
  if (n == 3) {
    // Single quadratic through three points: constant second derivative.
    const double dd = 2.0 *
                      ((v[2] - v[1]) / (t[2] - t[1]) - (v[1] - v[0]) / (t[1] - t[0])) /
                      (t[2] - t[0]);
    m[0] = m[1] = m[2] = dd;
    return m;
  }

  // Unknowns M_1..M_{n-2}; the boundary values follow from the not-a-knot
  // rules M_0 = M_1 - (h_0/h_1)(M_2 - M_1) and the mirrored one at the tail.
  const std::size_t k = n - 2;
  std::vector<double> diag(k), upper(k), lower(k), rhs(k);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    const std::size_t r = i - 1;
    lower[r] = h0 / 6.0;
    diag[r] = (h0 + h1) / 3.0;
    upper[r] = h1 / 6.0;
    rhs[r] = (v[i + 1] - v[i]) / h1 - (v[i] - v[i - 1]) / h0;
  }
  {
    const double h0 = t[1] - t[0];
    const double h1 = t[2] - t[1];
    diag[0] += lower[0] * (1.0 + h0 / h1);
    upper[0] -= lower[0] * (h0 / h1);
  }
  {
    const double h_last = t[n - 1] - t[n - 2];
    const double h_prev = t[n - 2] - t[n - 3];
    diag[k - 1] += upper[k - 1] * (1.0 + h_last / h_prev);
    lower[k - 1] -= upper[k - 1] * (h_last / h_prev);
  }

  // Thomas solve.
  for (std::size_t i = 1; i < k; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> x(k);
  x[k - 1] = rhs[k - 1] / diag[k - 1];
  for (std::size_t i = k - 1; i-- > 0;) {
    x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
  }
  for (std::size_t i = 0; i < k; ++i) {
    m[i + 1] = x[i];
  }
  m[0] = m[1] - (t[1] - t[0]) / (t[2] - t[1]) * (m[2] - m[1]);
  m[n - 1] = m[n - 2] + (t[n - 1] - t[n - 2]) / (t[n - 2] - t[n - 3]) * (m[n - 2] - m[n - 3]);
  return m;
}

}  // namespace

CubicSpline2D::CubicSpline2D(const std::vector<Vec2>& control) {
  if (control.size() < 2) {
    throw std::invalid_argument("spline needs at least 2 control points");
  }
  knots_.resize(control.size());
  knots_[0] = 0.0;
  for (std::size_t i = 1; i < control.size(); ++i) {
    const double chord = norm(control[i] - control[i - 1]);
    if (!(chord > 0.0)) {
      throw std::invalid_argument("duplicate consecutive control points");
    }
    knots_[i] = knots_[i - 1] + chord;
  }
  values_ = control;

  std::vector<double> vx(control.size()), vy(control.size());
  for (std::size_t i = 0; i < control.size(); ++i) {
    vx[i] = control[i].x;
    vy[i] = control[i].y;
  }
  const std::vector<double> mx = solve_second_derivatives(knots_, vx);
  const std::vector<double> my = solve_second_derivatives(knots_, vy);
  second_.resize(control.size());
  for (std::size_t i = 0; i < control.size(); ++i) {
    second_[i] = {mx[i], my[i]};
  }
}

std::size_t CubicSpline2D::segment_of(double t) const {
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  const std::size_t idx = static_cast<std::size_t>(it - knots_.begin());
  return std::clamp<std::size_t>(idx, 1, knots_.size() - 1) - 1;
}

Vec2 CubicSpline2D::operator()(double t) const {
  const std::size_t i = segment_of(t);
  const double h = knots_[i + 1] - knots_[i];
  const double a = (knots_[i + 1] - t) / h;
  const double b = (t - knots_[i]) / h;
  const double h2 = h * h / 6.0;
  return a * values_[i] + b * values_[i + 1] +
         (a * a * a - a) * h2 * second_[i] + (b * b * b - b) * h2 * second_[i + 1];
}

Vec2 CubicSpline2D::derivative(double t) const {
  const std::size_t i = segment_of(t);
  const double h = knots_[i + 1] - knots_[i];
  const double a = (knots_[i + 1] - t) / h;
  const double b = (t - knots_[i]) / h;
  return (values_[i + 1] - values_[i]) / h +
         (h / 6.0) * ((3.0 * b * b - 1.0) * second_[i + 1] - (3.0 * a * a - 1.0) * second_[i]);
}

double CubicSpline2D::arc_length(double t0, double t1, double tol) const {
  // Integrate per knot interval so the quadrature never straddles a junction.
  if (t0 > t1) {
    return -arc_length(t1, t0, tol);
  }
  const auto speed = [this](double t) { return norm(derivative(t)); };
  const double tol_per_segment = tol / static_cast<double>(knots_.size());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double lo = std::max(t0, knots_[i]);
    const double hi = std::min(t1, knots_[i + 1]);
    if (hi > lo) {
      total += adaptive_simpson(speed, lo, hi, tol_per_segment);
    }
  }
  return total;
}

}  // namespace lacfit
