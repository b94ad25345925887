#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lacfit/discrete_model.hpp"
#include "lacfit/geometry.hpp"

namespace lacfit {

/// Discrete differential data of a curve: chord tangents T_n, unwrapped
/// turning angles, inscribed-circle curvatures kappa_n, R_n = -log kappa_n
/// and the discrete derivative Delta R_n.
///
/// Index layout versus the formulas: tangents/theta hold n = 0..N-2,
/// kappa holds n = 1..N-2 at offset n-1, r_log likewise, delta_r holds
/// n = 1..N-3 at offset n-1. r_log and delta_r stay empty unless every
/// kappa_n is positive.
struct CurvatureProfile {
  std::vector<Vec2> tangents;
  std::vector<double> theta;
  std::vector<double> kappa;
  std::vector<double> r_log;
  std::vector<double> delta_r;
  double h = 0.0;

  std::size_t n_points() const { return tangents.size() + 1; }
};

CurvatureProfile curvature_profile(const DiscreteCurve& c);

/// The unique transform whose application makes the curvature positive and
/// strictly decreasing. Requires sign-constant, strictly monotone curvature.
CanonicalTransform choose_canonical_transform(const CurvatureProfile& profile);

/// Least-squares slope estimate of alpha from R_n and log Delta R_n.
double guess_alpha(const CurvatureProfile& profile);

/// Scale estimate S = h^(1/(1-alpha)) exp(mean(log Delta R + alpha R)/(alpha-1)).
double guess_scale(const CurvatureProfile& profile, double alpha, double h);

struct ArcShiftGuess {
  double s0 = 0.0;
  double z = 0.0;  ///< basic arc length per step, z = l/(N-1) = h/S
};

/// Mean estimate of s0 plus the definitional z; the total basic length is
/// l = z (N-1) = (N-1) h / S.
ArcShiftGuess guess_s0_z(const CurvatureProfile& profile, double alpha, double scale,
                         double h, std::size_t n_points);

struct PoseGuess {
  double phi = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
};

/// phi as the mean angle offset over n = 0..N-2, then (x0, y0) as the mean
/// gap to the zero-translation reconstruction. phi is reduced into [0, 2pi).
PoseGuess guess_phi_origin(const DiscreteCurve& c, const CurvatureProfile& profile,
                           double alpha, double s0, double z);

struct InitialGuess {
  ThetaParams theta;
  CanonicalTransform transform = CanonicalTransform::Identity;
  bool clamped = false;  ///< s0 was pushed back inside the domain margin
};

/// Three-step recovery of Theta from a discrete curve. The returned Theta
/// describes the canonicalized curve; `transform` is what was applied to
/// get there. With alpha_override the slope estimate is skipped and the
/// remaining steps run unchanged.
InitialGuess initial_guess(const DiscreteCurve& c,
                           std::optional<double> alpha_override = std::nullopt);

}  // namespace lacfit
