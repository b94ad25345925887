#include "lacfit/basic_lac.hpp"

#include <limits>
#include <numbers>
#include <string>

#include "lacfit/errors.hpp"
#include "lacfit/quadrature.hpp"

namespace lacfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_zero_branch(double alpha) { return std::abs(alpha) < kAlphaBranchEps; }
bool is_one_branch(double alpha) { return std::abs(alpha - 1.0) < kAlphaBranchEps; }

/// 1 + alpha s, checked against the margin. Quantities with a finite limit at
/// the interval endpoint (closure allowed) may evaluate at u = 0 exactly.
double checked_u(double alpha, double s, bool allow_closure) {
  if (!std::isfinite(s)) {
    throw DomainError("arc length is not finite");
  }
  if (is_zero_branch(alpha)) {
    return 1.0;
  }
  const double u = 1.0 + alpha * s;
  const double floor = allow_closure ? -1e-14 : kDomainMargin;
  if (u < floor) {
    throw DomainError("arc length s = " + std::to_string(s) +
                      " outside the maximal interval for alpha = " + std::to_string(alpha));
  }
  return std::max(u, 0.0);
}

/// log(1 + alpha s), tolerating the rounded closure (alpha s barely below -1).
double log_u(double alpha, double s) { return std::log1p(std::max(alpha * s, -1.0)); }

}  // namespace

DomainInterval lac_domain(double alpha) {
  if (is_zero_branch(alpha)) {
    return {-kInf, kInf};
  }
  return alpha > 0.0 ? DomainInterval{-1.0 / alpha, kInf} : DomainInterval{-kInf, -1.0 / alpha};
}

double basic_lac_curvature(double alpha, double s) {
  if (is_zero_branch(alpha)) {
    return std::exp(-s);
  }
  // kappa = u^(-1/alpha) has the limit 0 at u = 0 for alpha < 0 and
  // diverges there for alpha > 0.
  checked_u(alpha, s, alpha < 0.0);
  return std::exp(-log_u(alpha, s) / alpha);
}

double basic_lac_turning_angle(double alpha, double s) {
  if (is_zero_branch(alpha)) {
    return -std::expm1(-s);
  }
  // The exponent (alpha-1)/alpha is positive for alpha < 0 or alpha > 1,
  // where theta stays finite up to the interval endpoint.
  checked_u(alpha, s, alpha < 0.0 || alpha > 1.0 + kAlphaBranchEps);
  if (is_one_branch(alpha)) {
    return std::log1p(s);
  }
  return std::expm1((alpha - 1.0) / alpha * log_u(alpha, s)) / (alpha - 1.0);
}

Vec2 basic_lac_position_between(double alpha, double s_from, double s_to, double quad_tol) {
  const bool closure_ok =
      is_zero_branch(alpha) || alpha < 0.0 || alpha > 1.0 + kAlphaBranchEps;
  checked_u(alpha, s_from, closure_ok);
  checked_u(alpha, s_to, closure_ok);
  const auto tangent = [alpha](double s) -> Vec2 {
    const double theta = basic_lac_turning_angle(alpha, s);
    return {std::cos(theta), std::sin(theta)};
  };
  return adaptive_simpson(tangent, s_from, s_to, quad_tol);
}

Vec2 basic_lac_position(double alpha, double s, double quad_tol) {
  return basic_lac_position_between(alpha, 0.0, s, quad_tol);
}

double dtheta_dalpha(double alpha, double s) {
  if (is_zero_branch(alpha) || is_one_branch(alpha)) {
    throw DomainError("dtheta_dalpha is defined for alpha outside {0, 1}");
  }
  if (s == 0.0) {
    return 0.0;  // theta(0) = 0 for every alpha
  }
  const double u = checked_u(alpha, s, alpha < 0.0);
  const double am1 = alpha - 1.0;
  const double lu = log_u(alpha, s);
  const double u_log_u = u > 0.0 ? u * lu : 0.0;  // u log u -> 0 at the endpoint
  const double numer =
      std::exp(-lu / alpha) * (am1 * u_log_u - alpha * (alpha + 2.0 * s * alpha - s));
  return numer / (alpha * alpha * am1 * am1) + 1.0 / (am1 * am1);
}

void LacSegmentParams::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw FeasibilityError("segment scale S must be positive");
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw FeasibilityError("segment basic length l must be positive");
  }
  const DomainInterval dom = lac_domain(alpha);
  if (!dom.contains(s0) || !dom.contains(s0 + length)) {
    throw FeasibilityError("(s0, s0 + l) leaves the maximal interval");
  }
  if (!is_zero_branch(alpha)) {
    // The margin bound, not just open-interval membership.
    if (1.0 + alpha * s0 < kDomainMargin || 1.0 + alpha * (s0 + length) < kDomainMargin) {
      throw FeasibilityError("(s0, s0 + l) violates the domain margin");
    }
  }
}

Vec2 lac_segment_position(const LacSegmentParams& p, double s, double quad_tol) {
  p.validate();
  const Vec2 xi = basic_lac_position(p.alpha, s / p.scale + p.s0, quad_tol);
  const Rot2 rot(p.phi);
  return p.origin() + p.scale * rot(xi);
}

double normalize_angle(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) {
    r += two_pi;
  }
  return r < two_pi ? r : 0.0;
}

}  // namespace lacfit
