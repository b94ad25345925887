#pragma once

#include <cmath>
#include <utility>

#include "lacfit/errors.hpp"
#include "lacfit/geometry.hpp"

namespace lacfit {

namespace detail {

inline double quad_norm(double v) { return std::abs(v); }
inline double quad_norm(Vec2 v) { return std::max(std::abs(v.x), std::abs(v.y)); }

template <class F, class V>
V simpson_recurse(const F& f, double a, double b, V fa, V fm, V fb, V whole,
                  double tol, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const V flm = f(lm);
  const V frm = f(rm);
  const V left = ((m - a) / 6.0) * (fa + 4.0 * flm + fm);
  const V right = ((b - m) / 6.0) * (fm + 4.0 * frm + fb);
  const V delta = left + right - whole;
  if (quad_norm(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth >= max_depth) {
    throw QuadratureError("adaptive quadrature did not converge within depth budget");
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] (a > b allowed, sign flips)
/// to absolute tolerance tol. Works for double- and Vec2-valued integrands.
template <class F>
auto adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 40)
    -> decltype(f(a)) {
  using V = decltype(f(a));
  if (a == b) {
    return V{};
  }
  double lo = a, hi = b;
  double sign = 1.0;
  if (lo > hi) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  const V fa = f(lo);
  const V fb = f(hi);
  const V fm = f(0.5 * (lo + hi));
  const V whole = ((hi - lo) / 6.0) * (fa + 4.0 * fm + fb);
  return sign * detail::simpson_recurse(f, lo, hi, fa, fm, fb, whole, tol, 0, max_depth);
}

}  // namespace lacfit
