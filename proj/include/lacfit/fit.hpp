#pragma once

#include <optional>

#include "lacfit/basic_lac.hpp"
#include "lacfit/geometry.hpp"
#include "lacfit/initial_guess.hpp"
#include "lacfit/optimizer.hpp"

namespace lacfit {

struct FitOptions {
  double box_fraction = 0.1;
  std::optional<double> alpha_override;
  OptimizerSettings optimizer;
};

struct RecoverResult {
  InitialGuess guess;
  LacSegmentParams params;  ///< continuous seven-tuple for the guess
};

/// Canonicalize and recover the initial parameter guess for a curve.
RecoverResult recover(const DiscreteCurve& input,
                      std::optional<double> alpha_override = std::nullopt);

struct FitOutcome {
  FitReport report;
  InitialGuess guess;
  LacSegmentParams params_initial;
  LacSegmentParams params_final;
};

/// recover + box-constrained minimize against the canonicalized curve.
FitOutcome fit(const DiscreteCurve& input, const FitOptions& options = {});

/// Model curve mapped back into the input frame (the canonical transforms
/// are involutions, so applying the tag again undoes it).
DiscreteCurve reconstruct_in_input_frame(const ThetaParams& theta, CanonicalTransform tag);

}  // namespace lacfit
