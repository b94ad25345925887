#include "lacfit/initial_guess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lacfit/errors.hpp"

namespace lacfit {

namespace {

constexpr double kCuspTol = 1e-12;
constexpr double kDegenerateTol = 1e-14;
// |kappa| h is the turn per step; below this the segment is considered straight.
constexpr double kZeroTurnTol = 1e-12;
// Clamp margin for pushing s0 back into the domain; looser than the hard
// margin so the optimizer starts with breathing room.
constexpr double kClampMargin = 1e-9;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

CurvatureProfile curvature_profile(const DiscreteCurve& c) {
  const std::size_t n = c.size();
  const double h = c.step();
  CurvatureProfile prof;
  prof.h = h;
  prof.tangents.resize(n - 1);
  prof.theta.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    prof.tangents[i] = (c[i + 1] - c[i]) / h;
  }
  prof.theta[0] = std::atan2(prof.tangents[0].y, prof.tangents[0].x);
  if (n >= 3) {
    prof.kappa.resize(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const Vec2 prev = prof.tangents[i - 1];
      const Vec2 cur = prof.tangents[i];
      const double denom = 1.0 + dot(prev, cur);
      if (denom <= kCuspTol) {
        throw CuspError("antiparallel tangents at point " + std::to_string(i), i);
      }
      const double cross = det(prev, cur);
      prof.kappa[i - 1] = (2.0 / h) * cross / denom;
      prof.theta[i] = prof.theta[i - 1] + std::asin(std::clamp(cross, -1.0, 1.0));
    }
    const bool all_positive =
        std::all_of(prof.kappa.begin(), prof.kappa.end(), [](double k) { return k > 0.0; });
    if (all_positive) {
      prof.r_log.resize(prof.kappa.size());
      for (std::size_t i = 0; i < prof.kappa.size(); ++i) {
        prof.r_log[i] = -std::log(prof.kappa[i]);
      }
      if (prof.kappa.size() >= 2) {
        prof.delta_r.resize(prof.kappa.size() - 1);
        for (std::size_t i = 0; i + 1 < prof.kappa.size(); ++i) {
          prof.delta_r[i] = -(prof.kappa[i + 1] - prof.kappa[i]) / prof.kappa[i];
        }
      }
    }
  }
  return prof;
}

CanonicalTransform choose_canonical_transform(const CurvatureProfile& profile) {
  const auto& kappa = profile.kappa;
  if (kappa.size() < 2) {
    throw DegenerateInputError("too few curvature samples to classify the segment");
  }
  bool all_zero = true;
  for (double k : kappa) {
    if (std::abs(k) * profile.h > kZeroTurnTol) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) {
    throw DegenerateInputError("curvature vanishes along the curve (straight segment)");
  }
  const int sign = sign_of(kappa.front());
  for (double k : kappa) {
    if (sign_of(k) != sign) {
      throw NotLacSegmentError("curvature changes sign; split the curve first");
    }
  }
  const bool increasing = kappa[1] > kappa[0];
  for (std::size_t i = 0; i + 1 < kappa.size(); ++i) {
    const bool step_up = kappa[i + 1] > kappa[i];
    if (kappa[i + 1] == kappa[i] || step_up != increasing) {
      throw NotLacSegmentError("curvature is not strictly monotone; split the curve first");
    }
  }
  if (sign > 0) {
    return increasing ? CanonicalTransform::ReflectReverse : CanonicalTransform::Identity;
  }
  return increasing ? CanonicalTransform::Reflect : CanonicalTransform::Reverse;
}

namespace {

/// Terms available to steps 1-2; requires canonical (positive, decreasing)
/// curvature so every log is defined.
struct StepSums {
  std::size_t m = 0;  // N-3 usable pairs
  double sum_r = 0.0;
  double sum_r2 = 0.0;
  double sum_log_dr = 0.0;
  double sum_r_log_dr = 0.0;
};

StepSums step_sums(const CurvatureProfile& profile) {
  if (!profile.kappa.empty() && profile.r_log.empty()) {
    throw NoisyDataError("curvature is not positive; canonicalize or smooth the input");
  }
  if (profile.delta_r.empty()) {
    throw DegenerateInputError("too few points for the recovery sums");
  }
  StepSums s;
  s.m = profile.delta_r.size();
  for (std::size_t i = 0; i < s.m; ++i) {
    const double dr = profile.delta_r[i];
    if (dr <= 0.0) {
      throw NoisyDataError("Delta R_" + std::to_string(i + 1) +
                           " is not positive; smooth the input first");
    }
    const double r = profile.r_log[i];
    const double ldr = std::log(dr);
    s.sum_r += r;
    s.sum_r2 += r * r;
    s.sum_log_dr += ldr;
    s.sum_r_log_dr += r * ldr;
  }
  return s;
}

}  // namespace

double guess_alpha(const CurvatureProfile& profile) {
  // Least-squares slope of log Delta R against R, evaluated in centered form:
  // the raw-sums expression cancels catastrophically and loses the rigid-
  // motion invariance of the estimate.
  const StepSums s = step_sums(profile);
  const double m = static_cast<double>(s.m);
  const double mean_r = s.sum_r / m;
  const double mean_ldr = s.sum_log_dr / m;
  double var_r = 0.0;
  double cov = 0.0;
  for (std::size_t i = 0; i < s.m; ++i) {
    const double dr = profile.r_log[i] - mean_r;
    var_r += dr * dr;
    cov += dr * (std::log(profile.delta_r[i]) - mean_ldr);
  }
  if (var_r < kDegenerateTol) {
    throw DegenerateInputError("R is constant along the curve; alpha is undetermined");
  }
  return -cov / var_r;
}

double guess_scale(const CurvatureProfile& profile, double alpha, double h) {
  if (std::abs(alpha) < kAlphaBranchEps || std::abs(alpha - 1.0) < kAlphaBranchEps) {
    throw FeasibilityError("scale recovery requires alpha outside {0, 1}");
  }
  const StepSums s = step_sums(profile);
  const double m = static_cast<double>(s.m);
  const double mean = (s.sum_log_dr + alpha * s.sum_r) / m;
  const double scale = std::exp(std::log(h) / (1.0 - alpha) + mean / (alpha - 1.0));
  if (!std::isfinite(scale) || !(scale > 0.0)) {
    throw DegenerateInputError("scale recovery failed (alpha too close to 1?)");
  }
  return scale;
}

ArcShiftGuess guess_s0_z(const CurvatureProfile& profile, double alpha, double scale,
                         double h, std::size_t n_points) {
  if (profile.kappa.empty()) {
    throw DegenerateInputError("no curvature samples");
  }
  const double n1 = static_cast<double>(n_points - 1);
  double sum_k = 0.0;
  for (double k : profile.kappa) {
    if (k <= 0.0) {
      throw NoisyDataError("curvature is not positive; canonicalize or smooth the input");
    }
    sum_k += std::pow(k, -alpha);
  }
  const double m = static_cast<double>(profile.kappa.size());  // N-2
  ArcShiftGuess g;
  g.s0 = sum_k / (alpha * m * std::pow(scale, alpha)) - 1.0 / alpha - n1 * h / (2.0 * scale);
  // l = (N-1) h / S and z = l/(N-1), the definitional link to the scale.
  g.z = h / scale;
  return g;
}

PoseGuess guess_phi_origin(const DiscreteCurve& c, const CurvatureProfile& profile,
                           double alpha, double s0, double z) {
  const std::size_t n = c.size();
  double phi_acc = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    phi_acc += profile.theta[k] -
               basic_lac_turning_angle(alpha, z * static_cast<double>(k) + s0);
  }
  PoseGuess pose;
  pose.phi = normalize_angle(phi_acc / static_cast<double>(n - 1));

  ThetaParams checked{0.0, 0.0, c.step(), pose.phi, z, s0, alpha, n};
  const DiscreteCurve model = reconstruct(checked);
  Vec2 origin{};
  for (std::size_t k = 0; k < n; ++k) {
    origin += c[k] - model[k];
  }
  origin = origin / static_cast<double>(n);
  pose.x0 = origin.x;
  pose.y0 = origin.y;
  return pose;
}

namespace {

/// Push s0 back so 1 + alpha (z n + s0) >= margin over the whole index range.
bool clamp_s0(double alpha, double z, std::size_t n_points, double& s0) {
  const double n1 = static_cast<double>(n_points - 1);
  bool clamped = false;
  if (alpha > 0.0) {
    const double lo = (kClampMargin - 1.0) / alpha;
    if (s0 < lo) {
      s0 = lo;
      clamped = true;
    }
  } else {
    const double hi = (kClampMargin - 1.0) / alpha - z * n1;
    if (s0 > hi) {
      s0 = hi;
      clamped = true;
    }
  }
  return clamped;
}

}  // namespace

InitialGuess initial_guess(const DiscreteCurve& c, std::optional<double> alpha_override) {
  if (c.size() < 5) {
    throw DegenerateInputError("recovery needs at least 5 points");
  }
  CurvatureProfile prof = curvature_profile(c);
  const CanonicalTransform tag = choose_canonical_transform(prof);

  const DiscreteCurve* canonical = &c;
  DiscreteCurve transformed = c;
  if (tag != CanonicalTransform::Identity) {
    transformed = apply_transform(c, tag);
    prof = curvature_profile(transformed);
    canonical = &transformed;
  }

  const double h = canonical->step();
  const std::size_t n = canonical->size();

  const double alpha = alpha_override ? *alpha_override : guess_alpha(prof);
  if (std::abs(alpha) < kAlphaBranchEps || std::abs(alpha - 1.0) < kAlphaBranchEps) {
    throw DegenerateInputError("recovered alpha falls in the excluded set {0, 1}");
  }
  const double scale = guess_scale(prof, alpha, h);
  ArcShiftGuess shift = guess_s0_z(prof, alpha, scale, h, n);

  InitialGuess out;
  out.transform = tag;
  out.clamped = clamp_s0(alpha, shift.z, n, shift.s0);

  const PoseGuess pose = guess_phi_origin(*canonical, prof, alpha, shift.s0, shift.z);
  out.theta = ThetaParams{pose.x0, pose.y0, h, pose.phi, shift.z, shift.s0, alpha, n};
  out.theta.require_feasible();
  return out;
}

}  // namespace lacfit
