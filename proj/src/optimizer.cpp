#include "lacfit/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lacfit/errors.hpp"

namespace lacfit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
using Array7 = std::array<double, kThetaSize>;
}  // namespace

bool BoxConstraints::contains(const Array7& v) const {
  for (std::size_t i = 0; i < kThetaSize; ++i) {
    if (v[i] < lower[i] || v[i] > upper[i]) {
      return false;
    }
  }
  return true;
}

BoxConstraints make_box(const ThetaParams& guess, double fraction, double bbox_diagonal) {
  if (!(fraction > 0.0)) {
    throw FeasibilityError("box fraction must be positive");
  }
  const Array7 center = guess.to_array();
  BoxConstraints box;
  for (std::size_t i = 0; i < kThetaSize; ++i) {
    double width = fraction * std::abs(center[i]);
    if (center[i] == 0.0) {
      width = (i == kX0 || i == kY0) ? fraction * std::max(1.0, bbox_diagonal) : fraction;
    }
    box.lower[i] = center[i] - width;
    box.upper[i] = center[i] + width;
  }
  return box;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::GradTol: return "grad_tol";
    case Termination::MaxIter: return "max_iter";
    case Termination::StepUnderflow: return "step_underflow";
    case Termination::BoxBound: return "box_bound";
  }
  return "max_iter";
}

namespace {

double safe_objective(const Array7& x, std::size_t n, const DiscreteCurve& target) {
  const ThetaParams theta = ThetaParams::from_array(x, n);
  if (!theta.feasible()) {
    return kInf;
  }
  return objective(theta, target);
}

Array7 project(const Array7& x, const BoxConstraints& box) {
  Array7 out;
  for (std::size_t i = 0; i < kThetaSize; ++i) {
    out[i] = std::clamp(x[i], box.lower[i], box.upper[i]);
  }
  return out;
}

}  // namespace

FitReport minimize(const DiscreteCurve& target, const ThetaParams& theta0,
                   const BoxConstraints& box, const OptimizerSettings& settings) {
  if (!(settings.grad_tol > 0.0) || !(settings.min_step > 0.0) ||
      !(settings.step_shrink > 0.0) || !(settings.step_shrink < 1.0) ||
      !(settings.armijo_c > 0.0) || !(settings.armijo_c < 1.0)) {
    throw FeasibilityError("optimizer settings out of range");
  }
  theta0.require_feasible();
  if (!box.contains(theta0.to_array())) {
    throw FeasibilityError("initial theta is outside the box constraints");
  }
  if (target.size() != theta0.n_points) {
    throw FeasibilityError("target point count does not match theta");
  }

  const std::size_t n = theta0.n_points;

  FitReport report;
  report.theta_initial = theta0;

  Array7 x = theta0.to_array();
  double fx = safe_objective(x, n, target);
  report.objective_trace.push_back(fx);

  Array7 prev_x{};
  Array7 prev_g{};
  bool have_prev = false;
  double t_accepted = 0.0;
  Termination term = Termination::MaxIter;

  for (std::size_t iter = 0; iter < settings.max_iterations; ++iter) {
    const GradientInfo info = gradient_info(ThetaParams::from_array(x, n), target);
    const Array7 g = info.gradient.to_array();

    double g_inf = 0.0;
    for (double gi : g) {
      g_inf = std::max(g_inf, std::abs(gi));
    }
    if (g_inf <= settings.grad_tol) {
      term = Termination::GradTol;
      break;
    }

    // Diagonal preconditioning: Theta mixes lengths, radians and the
    // dimensionless alpha, so raw gradient steps stall. The Gauss-Newton
    // diagonal rescales each component to a comparable curvature.
    Array7 precond;
    {
      double diag_max = 0.0;
      for (double dv : info.gn_diagonal) {
        diag_max = std::max(diag_max, dv);
      }
      for (std::size_t i = 0; i < kThetaSize; ++i) {
        precond[i] = 1.0 / (info.gn_diagonal[i] + 1e-12 * diag_max + 1e-300);
      }
    }

    Array7 d;
    for (std::size_t i = 0; i < kThetaSize; ++i) {
      d[i] = -precond[i] * g[i];
    }

    // All descent directions blocked by active bounds: the box decides.
    bool blocked = true;
    for (std::size_t i = 0; i < kThetaSize; ++i) {
      if (d[i] > 0.0 && x[i] < box.upper[i]) blocked = false;
      if (d[i] < 0.0 && x[i] > box.lower[i]) blocked = false;
    }
    if (blocked) {
      term = Termination::BoxBound;
      break;
    }

    // Barzilai-Borwein spectral step in the preconditioned metric as the
    // line-search start, safeguarded by the Armijo backtracking below.
    double t = 0.0;
    if (have_prev) {
      double s_dot_y = 0.0;
      double s_dot_s = 0.0;
      for (std::size_t i = 0; i < kThetaSize; ++i) {
        const double si = x[i] - prev_x[i];
        s_dot_y += si * (g[i] - prev_g[i]);
        s_dot_s += si * si / precond[i];
      }
      if (s_dot_y > 0.0 && std::isfinite(s_dot_s / s_dot_y)) {
        t = std::clamp(s_dot_s / s_dot_y, 1e-14, 1e14);
      }
    }
    if (t == 0.0) {
      // The Gauss-Newton scaling makes t = 1 the natural first trial.
      t = t_accepted > 0.0 ? std::min(4.0 * t_accepted, 1.0) : 1.0;
    }

    prev_x = x;
    prev_g = g;
    have_prev = true;

    bool accepted = false;
    while (true) {
      const Array7 trial = project({x[0] + t * d[0], x[1] + t * d[1], x[2] + t * d[2],
                                    x[3] + t * d[3], x[4] + t * d[4], x[5] + t * d[5],
                                    x[6] + t * d[6]},
                                   box);
      double decrease = 0.0;
      for (std::size_t i = 0; i < kThetaSize; ++i) {
        decrease += g[i] * (trial[i] - x[i]);
      }
      const double ft = safe_objective(trial, n, target);
      if (decrease < 0.0 && ft <= fx + settings.armijo_c * decrease) {
        x = trial;
        fx = ft;
        t_accepted = t;
        accepted = true;
        break;
      }
      t *= settings.step_shrink;
      if (t < settings.min_step) {
        break;
      }
    }
    if (!accepted) {
      term = Termination::StepUnderflow;
      break;
    }
    report.objective_trace.push_back(fx);
  }

  report.termination = term;
  report.theta_final = ThetaParams::from_array(x, n);
  report.rms_distance = std::sqrt(2.0 * fx / static_cast<double>(n));
  return report;
}

}  // namespace lacfit
