#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "lacfit/discrete_model.hpp"
#include "lacfit/geometry.hpp"

namespace lacfit {

/// Componentwise bounds on Theta in the (x0, y0, h, phi, z, s0, alpha) order.
struct BoxConstraints {
  std::array<double, kThetaSize> lower{};
  std::array<double, kThetaSize> upper{};

  bool contains(const std::array<double, kThetaSize>& v) const;
};

/// Bounds Theta_i +- fraction |Theta_i|. A zero component would freeze the
/// parameter, so it falls back to an absolute half-width: fraction times
/// max(1, bbox_diagonal) for x0/y0 and fraction itself for the rest.
BoxConstraints make_box(const ThetaParams& guess, double fraction,
                        double bbox_diagonal = 0.0);

struct OptimizerSettings {
  std::size_t max_iterations = 5000;
  double grad_tol = 1e-8;
  double step_shrink = 0.5;
  double armijo_c = 1e-4;
  double min_step = 1e-16;
};

enum class Termination { GradTol, MaxIter, StepUnderflow, BoxBound };

std::string_view to_string(Termination t);

struct FitReport {
  ThetaParams theta_initial;
  ThetaParams theta_final;
  CanonicalTransform transform = CanonicalTransform::Identity;
  std::vector<double> objective_trace;  ///< non-increasing, starts at L(theta0)
  double rms_distance = 0.0;            ///< sqrt(2 L(theta_final) / N)
  Termination termination = Termination::MaxIter;

  std::size_t iterations() const { return objective_trace.size() - 1; }
  double objective_initial() const { return objective_trace.front(); }
  double objective_final() const { return objective_trace.back(); }
};

/// Projected-gradient descent with Armijo backtracking over box cap U.
/// Trial points outside the admissible set score +inf and force the line
/// search to retreat, so every accepted iterate is feasible and in the box.
/// Deterministic: identical inputs give bit-identical reports.
FitReport minimize(const DiscreteCurve& target, const ThetaParams& theta0,
                   const BoxConstraints& box, const OptimizerSettings& settings = {});

}  // namespace lacfit
