#include "lacfit/fit.hpp"

namespace lacfit {

RecoverResult recover(const DiscreteCurve& input, std::optional<double> alpha_override) {
  RecoverResult out;
  out.guess = initial_guess(input, alpha_override);
  out.params = to_segment_params(out.guess.theta);
  return out;
}

FitOutcome fit(const DiscreteCurve& input, const FitOptions& options) {
  FitOutcome out;
  out.guess = initial_guess(input, options.alpha_override);
  const DiscreteCurve canonical = apply_transform(input, out.guess.transform);
  const BoxConstraints box =
      make_box(out.guess.theta, options.box_fraction, canonical.bounds_diagonal());
  out.report = minimize(canonical, out.guess.theta, box, options.optimizer);
  out.report.transform = out.guess.transform;
  out.params_initial = to_segment_params(out.guess.theta);
  out.params_final = to_segment_params(out.report.theta_final);
  return out;
}

DiscreteCurve reconstruct_in_input_frame(const ThetaParams& theta, CanonicalTransform tag) {
  return apply_transform(reconstruct(theta), tag);
}

}  // namespace lacfit
