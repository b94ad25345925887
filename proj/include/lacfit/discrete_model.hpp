#pragma once

#include <array>
#include <cstddef>

#include "lacfit/basic_lac.hpp"
#include "lacfit/geometry.hpp"

namespace lacfit {

/// Component order of the optimization vector Theta.
enum ThetaIndex : std::size_t {
  kX0 = 0,
  kY0 = 1,
  kH = 2,
  kPhi = 3,
  kZ = 4,
  kS0 = 5,
  kAlpha = 6,
};

inline constexpr std::size_t kThetaSize = 7;

/// Discrete fitting parameters Theta = (x0, y0, h, phi, z, s0, alpha) plus
/// the point count N. z is the basic arc length advanced per step, z = h/S.
struct ThetaParams {
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 1.0;
  double phi = 0.0;
  double z = 1.0;
  double s0 = 0.0;
  double alpha = 2.0;
  std::size_t n_points = 2;

  std::array<double, kThetaSize> to_array() const {
    return {x0, y0, h, phi, z, s0, alpha};
  }
  static ThetaParams from_array(const std::array<double, kThetaSize>& a, std::size_t n_points) {
    return {a[kX0], a[kY0], a[kH], a[kPhi], a[kZ], a[kS0], a[kAlpha], n_points};
  }

  /// Membership in the admissible set: h > 0, z > 0, alpha outside the
  /// {0, 1} branch windows, and 1 + alpha (z n + s0) >= margin for every
  /// n in 0..N-1 (linear in n, so the endpoints decide).
  bool feasible() const;
  void require_feasible() const;  ///< throws FeasibilityError
};

struct GradientVector {
  double d_x0 = 0.0;
  double d_y0 = 0.0;
  double d_h = 0.0;
  double d_phi = 0.0;
  double d_z = 0.0;
  double d_s0 = 0.0;
  double d_alpha = 0.0;

  std::array<double, kThetaSize> to_array() const {
    return {d_x0, d_y0, d_h, d_phi, d_z, d_s0, d_alpha};
  }
};

/// Second-order discrete curve: point 0 at (x0, y0), segment n (n = 1..N-1)
/// of length h in direction theta_xi(z n + s0) + phi.
DiscreteCurve reconstruct(const ThetaParams& theta);

/// L(Theta) = 1/2 sum_n |lambda_n - gamma_n|^2.
double objective(const ThetaParams& theta, const DiscreteCurve& target);

/// Exact gradient of the objective, accumulated along the same forward
/// recursion that builds the curve.
GradientVector gradient(const ThetaParams& theta, const DiscreteCurve& target);

struct GradientInfo {
  GradientVector gradient;
  /// Gauss-Newton diagonal sum_n |d lambda_n / d Theta_i|^2, a free byproduct
  /// of the recursion; the optimizer uses it to scale the descent direction.
  std::array<double, kThetaSize> gn_diagonal{};
};

GradientInfo gradient_info(const ThetaParams& theta, const DiscreteCurve& target);

/// Continuous segment parameters represented by Theta: S = h/z,
/// l = z (N-1), gamma0 = (x0, y0) - S Rot(phi) xi(s0).
LacSegmentParams to_segment_params(const ThetaParams& theta, double quad_tol = 1e-12);

/// Canonical discrete embedding of a continuous segment: h = S l/(N-1),
/// z = h/S, and s0 shifted back by z/2 so each segment angle samples the
/// midpoint of its arc cell. The recursion reads the tangent at segment
/// ends, and only the half-step shift makes the pointwise gap to the
/// continuous curve second order.
ThetaParams theta_from_segment(const LacSegmentParams& p, std::size_t n_points,
                               double quad_tol = 1e-12);

}  // namespace lacfit
