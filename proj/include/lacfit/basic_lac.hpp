#pragma once

#include <cmath>

#include "lacfit/geometry.hpp"

namespace lacfit {

/// Evaluators switch to the closed forms for alpha = 0 / alpha = 1 inside
/// this window; the recovery layers treat those alphas as excluded.
inline constexpr double kAlphaBranchEps = 1e-12;

/// 1 + alpha s must stay at or above this margin, not merely positive,
/// so (1 + alpha s)^(-1/alpha) stays finite.
inline constexpr double kDomainMargin = 1e-12;

/// Maximal arc-length interval of the basic curve:
/// (-inf, -1/alpha) for alpha < 0, all reals for alpha = 0,
/// (-1/alpha, inf) for alpha > 0.
struct DomainInterval {
  double lower;
  double upper;
  bool contains(double s) const { return s > lower && s < upper; }
};

DomainInterval lac_domain(double alpha);

/// kappa(s) = exp(-s) for alpha = 0, else (1 + alpha s)^(-1/alpha). Positive.
double basic_lac_curvature(double alpha, double s);

/// theta(s) = 1 - exp(-s) for alpha = 0, log(s + 1) for alpha = 1,
/// else ((1 + alpha s)^((alpha-1)/alpha) - 1)/(alpha - 1). theta(0) = 0.
double basic_lac_turning_angle(double alpha, double s);

/// xi(s) = integral_0^s (cos theta, sin theta), adaptive Simpson to quad_tol.
Vec2 basic_lac_position(double alpha, double s, double quad_tol = 1e-10);

/// Increment xi(s_to) - xi(s_from) without integrating from the origin.
Vec2 basic_lac_position_between(double alpha, double s_from, double s_to,
                                double quad_tol = 1e-10);

/// Closed form of d theta / d alpha for alpha outside {0, 1}; equals the
/// alpha-derivative of basic_lac_turning_angle and vanishes at s = 0.
double dtheta_dalpha(double alpha, double s);

/// Seven-tuple p = (alpha, S, s0, l, phi, x0, y0) identifying a curve segment
/// gamma(s) = gamma0 + S Rot(phi) xi(s/S + s0) of Euclidean length S l.
struct LacSegmentParams {
  double alpha = 0.0;
  double scale = 1.0;   ///< S > 0
  double s0 = 0.0;      ///< arc-length shift in basic units
  double length = 1.0;  ///< l > 0, basic units; Euclidean length is S l
  double phi = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;

  double euclidean_length() const { return scale * length; }
  Vec2 origin() const { return {x0, y0}; }

  /// Throws FeasibilityError unless S > 0, l > 0 and (s0, s0 + l) sits
  /// inside the maximal interval with the domain margin.
  void validate() const;
};

Vec2 lac_segment_position(const LacSegmentParams& p, double s, double quad_tol = 1e-10);

/// Angle reduced into [0, 2pi); only used at reporting boundaries.
double normalize_angle(double phi);

}  // namespace lacfit
