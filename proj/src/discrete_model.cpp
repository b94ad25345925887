#include "lacfit/discrete_model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lacfit/errors.hpp"

namespace lacfit {

bool ThetaParams::feasible() const {
  if (n_points < 2) return false;
  if (!(h > 0.0) || !(z > 0.0)) return false;
  if (!std::isfinite(x0) || !std::isfinite(y0) || !std::isfinite(phi)) return false;
  if (!std::isfinite(h) || !std::isfinite(z) || !std::isfinite(s0) || !std::isfinite(alpha)) {
    return false;
  }
  if (std::abs(alpha) < kAlphaBranchEps || std::abs(alpha - 1.0) < kAlphaBranchEps) return false;
  const double last = z * static_cast<double>(n_points - 1) + s0;
  if (1.0 + alpha * s0 < kDomainMargin) return false;
  if (1.0 + alpha * last < kDomainMargin) return false;
  return true;
}

void ThetaParams::require_feasible() const {
  if (!feasible()) {
    throw FeasibilityError("theta violates the admissible set");
  }
}

DiscreteCurve reconstruct(const ThetaParams& theta) {
  theta.require_feasible();
  const std::size_t n = theta.n_points;
  std::vector<Vec2> pts(n);
  pts[0] = {theta.x0, theta.y0};
  for (std::size_t k = 1; k < n; ++k) {
    const double ang =
        basic_lac_turning_angle(theta.alpha, theta.z * static_cast<double>(k) + theta.s0) +
        theta.phi;
    pts[k] = pts[k - 1] + theta.h * Vec2{std::cos(ang), std::sin(ang)};
  }
  return DiscreteCurve(std::move(pts), theta.h);
}

namespace {

void check_target(const ThetaParams& theta, const DiscreteCurve& target) {
  if (target.size() != theta.n_points) {
    throw std::invalid_argument("target point count does not match theta");
  }
}

}  // namespace

double objective(const ThetaParams& theta, const DiscreteCurve& target) {
  check_target(theta, target);
  theta.require_feasible();
  Vec2 cur{theta.x0, theta.y0};
  Vec2 r = cur - target[0];
  double acc = dot(r, r);
  for (std::size_t k = 1; k < theta.n_points; ++k) {
    const double ang =
        basic_lac_turning_angle(theta.alpha, theta.z * static_cast<double>(k) + theta.s0) +
        theta.phi;
    cur += theta.h * Vec2{std::cos(ang), std::sin(ang)};
    r = cur - target[k];
    acc += dot(r, r);
  }
  return 0.5 * acc;
}

GradientInfo gradient_info(const ThetaParams& theta, const DiscreteCurve& target) {
  check_target(theta, target);
  theta.require_feasible();

  // Running partials d lambda_n / d Theta_i; x0 and y0 are constant (1,0)/(0,1).
  Vec2 p_h{}, p_phi{}, p_z{}, p_s0{}, p_alpha{};
  GradientInfo info;
  GradientVector& g = info.gradient;
  auto& diag = info.gn_diagonal;

  Vec2 cur{theta.x0, theta.y0};
  Vec2 r = cur - target[0];
  g.d_x0 = r.x;
  g.d_y0 = r.y;
  diag[kX0] = 1.0;
  diag[kY0] = 1.0;

  for (std::size_t k = 1; k < theta.n_points; ++k) {
    const double kk = static_cast<double>(k);
    const double arg = theta.z * kk + theta.s0;
    const double ang = basic_lac_turning_angle(theta.alpha, arg) + theta.phi;
    const Vec2 t{std::cos(ang), std::sin(ang)};
    const Vec2 t_perp = perp(t);
    const double kappa = basic_lac_curvature(theta.alpha, arg);
    const double dtheta = dtheta_dalpha(theta.alpha, arg);

    p_h += t;
    p_phi += theta.h * t_perp;
    p_z += (theta.h * kk * kappa) * t_perp;
    p_s0 += (theta.h * kappa) * t_perp;
    p_alpha += (theta.h * dtheta) * t_perp;

    cur += theta.h * t;
    r = cur - target[k];

    g.d_x0 += r.x;
    g.d_y0 += r.y;
    g.d_h += dot(r, p_h);
    g.d_phi += dot(r, p_phi);
    g.d_z += dot(r, p_z);
    g.d_s0 += dot(r, p_s0);
    g.d_alpha += dot(r, p_alpha);

    diag[kX0] += 1.0;
    diag[kY0] += 1.0;
    diag[kH] += dot(p_h, p_h);
    diag[kPhi] += dot(p_phi, p_phi);
    diag[kZ] += dot(p_z, p_z);
    diag[kS0] += dot(p_s0, p_s0);
    diag[kAlpha] += dot(p_alpha, p_alpha);
  }
  return info;
}

GradientVector gradient(const ThetaParams& theta, const DiscreteCurve& target) {
  return gradient_info(theta, target).gradient;
}

ThetaParams theta_from_segment(const LacSegmentParams& p, std::size_t n_points,
                               double quad_tol) {
  p.validate();
  if (n_points < 2) {
    throw std::invalid_argument("theta_from_segment: need at least 2 points");
  }
  ThetaParams theta;
  theta.n_points = n_points;
  theta.alpha = p.alpha;
  theta.h = p.euclidean_length() / static_cast<double>(n_points - 1);
  theta.z = theta.h / p.scale;
  theta.s0 = p.s0 - 0.5 * theta.z;
  theta.phi = p.phi;
  const Vec2 head =
      p.origin() + p.scale * Rot2(p.phi)(basic_lac_position(p.alpha, p.s0, quad_tol));
  theta.x0 = head.x;
  theta.y0 = head.y;
  theta.require_feasible();
  return theta;
}

LacSegmentParams to_segment_params(const ThetaParams& theta, double quad_tol) {
  theta.require_feasible();
  LacSegmentParams p;
  p.alpha = theta.alpha;
  p.scale = theta.h / theta.z;
  p.s0 = theta.s0;
  p.length = theta.z * static_cast<double>(theta.n_points - 1);
  p.phi = normalize_angle(theta.phi);
  const Vec2 xi0 = basic_lac_position(theta.alpha, theta.s0, quad_tol);
  const Rot2 rot(p.phi);
  const Vec2 origin = Vec2{theta.x0, theta.y0} - p.scale * rot(xi0);
  p.x0 = origin.x;
  p.y0 = origin.y;
  return p;
}

}  // namespace lacfit
