#include "lacfit/acceptance.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lacfit/errors.hpp"
#include "lacfit/fit.hpp"
#include "lacfit/io.hpp"
#include "lacfit/preprocess.hpp"
#include "lacfit/rng.hpp"
#include "lacfit/synth.hpp"

namespace lacfit {

namespace {

constexpr std::uint64_t kSeedBase = 0x1acf17u;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

// --- criterion 1: analytic gradient vs central finite differences ----------

ThetaParams random_feasible_theta(SplitMix64& rng, std::size_t n_points) {
  ThetaParams t;
  do {
    t.alpha = rng.next_in(-2.0, 3.0);
  } while (std::abs(t.alpha) < 0.05 || std::abs(t.alpha - 1.0) < 0.05);
  t.h = rng.next_in(0.02, 0.1);
  t.z = rng.next_in(0.002, 0.005);
  t.s0 = rng.next_in(0.01, 0.2);
  t.phi = rng.next_in(0.0, 6.2);
  t.x0 = rng.next_in(-1.0, 1.0);
  t.y0 = rng.next_in(-1.0, 1.0);
  t.n_points = n_points;
  return t;
}

CriterionResult criterion1() {
  constexpr std::size_t kTrials = 20;
  constexpr std::size_t kN = 50;
  SplitMix64 rng(kSeedBase + 1);
  double worst = 0.0;
  for (std::size_t trial = 0; trial < kTrials; ++trial) {
    const ThetaParams theta = random_feasible_theta(rng, kN);
    const DiscreteCurve target = reconstruct(random_feasible_theta(rng, kN));
    const auto analytic = gradient(theta, target).to_array();
    auto base = theta.to_array();
    for (std::size_t i = 0; i < kThetaSize; ++i) {
      const double step = 1e-6 * std::max(1.0, std::abs(base[i]));
      auto plus = base;
      auto minus = base;
      plus[i] += step;
      minus[i] -= step;
      const double fd = (objective(ThetaParams::from_array(plus, kN), target) -
                         objective(ThetaParams::from_array(minus, kN), target)) /
                        (2.0 * step);
      const double rel = std::abs(analytic[i] - fd) / std::max(1.0, std::abs(fd));
      worst = std::max(worst, rel);
    }
  }
  return {1, "gradient matches finite differences", worst <= 1e-5,
          "20 random feasible Theta, N=50, worst relative error " + fmt(worst) +
              " (tolerance 1e-5)"};
}

// --- criterion 2: second-order reconstruction ------------------------------

CriterionResult criterion2() {
  const LacSegmentParams p{2.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0};
  std::vector<double> errors;
  for (const std::size_t segments : {100, 200, 400, 800}) {
    const std::size_t n = segments + 1;
    const double h = 1.0 / static_cast<double>(segments);
    const ThetaParams theta = theta_from_segment(p, n);
    const DiscreteCurve model = reconstruct(theta);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 exact = lac_segment_position(p, h * static_cast<double>(k), 1e-12);
      worst = std::max(worst, norm(model[k] - exact));
    }
    errors.push_back(worst);
  }
  bool ok = true;
  std::string ratios;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double ratio = errors[i] / errors[i + 1];
    ok = ok && ratio >= 3.0 && ratio <= 5.0;
    ratios += (i ? ", " : "") + fmt(ratio);
  }
  return {2, "reconstruction is second order", ok,
          "gap ratios under step halving: " + ratios + " (required within [3, 5])"};
}

// --- criterion 3: round-trip recovery (shared with 6, 7, 8) ----------------

struct RoundTrip {
  double alpha_true = 0.0;
  double euclidean_length = 0.0;
  FitOutcome outcome;
  std::string report_json;
};

LacSegmentParams random_segment(double alpha, SplitMix64& rng) {
  double s0_mag_lo = 0.1, s0_mag_hi = 0.3, l_lo = 0.5, l_hi = 1.0;
  if (alpha == -1.0) {
    s0_mag_lo = 0.1; s0_mag_hi = 0.3; l_lo = 0.35; l_hi = 0.5;
  } else if (alpha == -0.5) {
    s0_mag_lo = 0.1; s0_mag_hi = 0.5; l_lo = 0.5; l_hi = 1.0;
  } else if (alpha == 0.5) {
    s0_mag_lo = 0.1; s0_mag_hi = 0.5; l_lo = 0.5; l_hi = 1.0;
  } else if (alpha == 2.0) {
    s0_mag_lo = 0.1; s0_mag_hi = 0.3; l_lo = 0.5; l_hi = 1.0;
  } else if (alpha == 3.0) {
    s0_mag_lo = 0.05; s0_mag_hi = 0.15; l_lo = 0.4; l_hi = 0.8;
  }
  LacSegmentParams p;
  p.alpha = alpha;
  p.scale = rng.next_in(0.5, 2.0);
  p.s0 = (rng.next_double() < 0.5 ? -1.0 : 1.0) * rng.next_in(s0_mag_lo, s0_mag_hi);
  p.length = rng.next_in(l_lo, l_hi);
  p.phi = rng.next_in(0.5, 5.5);
  p.x0 = (rng.next_double() < 0.5 ? -1.0 : 1.0) * rng.next_in(1.0, 5.0);
  p.y0 = (rng.next_double() < 0.5 ? -1.0 : 1.0) * rng.next_in(1.0, 5.0);
  p.validate();
  return p;
}

std::vector<RoundTrip> run_round_trips() {
  constexpr std::size_t kN = 400;
  constexpr std::size_t kTrialsPerAlpha = 2;
  std::vector<RoundTrip> trips;
  for (const double alpha : {-1.0, -0.5, 0.5, 2.0, 3.0}) {
    SplitMix64 rng(kSeedBase + 3 + static_cast<std::uint64_t>((alpha + 2.0) * 64.0));
    for (std::size_t trial = 0; trial < kTrialsPerAlpha; ++trial) {
      RoundTrip rt;
      rt.alpha_true = alpha;
      const LacSegmentParams p = random_segment(alpha, rng);
      rt.euclidean_length = p.euclidean_length();
      const DiscreteCurve curve = sample_lac(p, kN);
      rt.outcome = fit(curve, FitOptions{});
      rt.report_json = fit_to_json(rt.outcome).dump();
      trips.push_back(std::move(rt));
    }
  }
  return trips;
}

CriterionResult criterion3(const std::vector<RoundTrip>& trips) {
  bool ok = true;
  double worst_alpha_rel = 0.0;
  double worst_rms_rel = 0.0;
  for (const RoundTrip& rt : trips) {
    const double alpha_rel =
        std::abs(rt.outcome.guess.theta.alpha - rt.alpha_true) / std::abs(rt.alpha_true);
    const double rms_rel = rt.outcome.report.rms_distance / rt.euclidean_length;
    worst_alpha_rel = std::max(worst_alpha_rel, alpha_rel);
    worst_rms_rel = std::max(worst_rms_rel, rms_rel);
    ok = ok && alpha_rel <= 0.05 && rms_rel <= 1e-4 &&
         rt.outcome.report.objective_final() < rt.outcome.report.objective_initial();
  }
  return {3, "round-trip recovery over alpha in {-1,-0.5,0.5,2,3}", ok,
          std::to_string(trips.size()) + " fits at N=400; worst |alpha error| " +
              fmt(100.0 * worst_alpha_rel) + "% (<=5%), worst rms/L " + fmt(worst_rms_rel) +
              " (<=1e-4), objective strictly reduced"};
}

// --- criterion 4: discrete curvature is second order -----------------------

CriterionResult criterion4() {
  std::vector<double> errors;
  for (const double delta : {0.1, 0.05, 0.025, 0.0125}) {
    const std::size_t n = 50;
    const double h = 2.0 * std::sin(delta / 2.0);
    std::vector<Vec2> pts(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double a = delta * static_cast<double>(k);
      pts[k] = {std::cos(a), std::sin(a)};
    }
    const CurvatureProfile prof = curvature_profile(DiscreteCurve(std::move(pts), h));
    double worst = 0.0;
    for (double kap : prof.kappa) {
      worst = std::max(worst, std::abs(kap - 1.0));
    }
    errors.push_back(worst);
  }
  bool ok = true;
  std::string ratios;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double ratio = errors[i] / errors[i + 1];
    ok = ok && ratio >= 3.0 && ratio <= 5.0;
    ratios += (i ? ", " : "") + fmt(ratio);
  }
  return {4, "inscribed-circle curvature is second order", ok,
          "unit circle |kappa - 1| ratios under h-halving: " + ratios +
              " (required within [3, 5])"};
}

// --- criterion 5: smoothing loop rescues noisy curvature -------------------

CriterionResult criterion5() {
  const LacSegmentParams p{2.0, 1.0, 0.15, 1.0, 0.4, 0.5, -0.3};
  constexpr std::size_t kN = 400;
  const DiscreteCurve clean = sample_lac(p, kN);
  const double len = clean.length();
  const double amplitude = 1e-3 * len;

  int below = 0;
  int rescued = 0;
  constexpr int kTrials = 10;
  for (int trial = 0; trial < kTrials; ++trial) {
    const std::vector<Vec2> noisy = add_noise(clean, amplitude, kSeedBase + 500 + trial);

    bool raw_raises = false;
    try {
      guess_alpha(curvature_profile(DiscreteCurve::unchecked(noisy, clean.step())));
    } catch (const NoisyDataError&) {
      raw_raises = true;
    } catch (const Error&) {
      raw_raises = false;
    }

    const SmoothResult sm = smooth(noisy, clean.step(), SmoothingSettings{1e-3, 0, 1});
    if (sm.below_threshold) {
      ++below;
    }
    bool smoothed_ok = false;
    try {
      guess_alpha(curvature_profile(sm.curve));
      smoothed_ok = true;
    } catch (const Error&) {
      smoothed_ok = false;
    }
    if (raw_raises && smoothed_ok) {
      ++rescued;
    }
  }
  const bool ok = below == kTrials && rescued >= 8;
  return {5, "smoothing loop at eta = 1e-3", ok,
          "residual below eta in " + std::to_string(below) + "/10 trials; alpha recovery "
          "rescued (raw raises noisy-data, smoothed succeeds) in " +
              std::to_string(rescued) + "/10 (need >= 8)"};
}

// --- criterion 6: invariance suite ------------------------------------------

CriterionResult criterion6(const std::vector<RoundTrip>& trips) {
  std::string fail;

  const LacSegmentParams p{2.0, 5.0, 0.1, 1.0, 0.0, 0.0, 0.0};
  const DiscreteCurve base = sample_lac(p, 150);
  const double alpha0 = guess_alpha(curvature_profile(base));

  {  // rotation + translation leave the estimate untouched
    const Rot2 rot(0.7);
    std::vector<Vec2> pts;
    pts.reserve(base.size());
    for (const Vec2& q : base.points()) {
      pts.push_back(rot(q) + Vec2{3.0, -2.0});
    }
    const double a = guess_alpha(curvature_profile(DiscreteCurve(std::move(pts), base.step())));
    if (std::abs(a - alpha0) > 1e-9) {
      fail += " rigid-motion drift " + fmt(std::abs(a - alpha0)) + ";";
    }
  }
  {  // positive scaling
    const double c = 2.5;
    std::vector<Vec2> pts;
    pts.reserve(base.size());
    for (const Vec2& q : base.points()) {
      pts.push_back(c * q);
    }
    const double a =
        guess_alpha(curvature_profile(DiscreteCurve(std::move(pts), c * base.step())));
    if (std::abs(a - alpha0) > 1e-3) {
      fail += " scaling drift " + fmt(std::abs(a - alpha0)) + ";";
    }
  }
  {  // canonicalization table over all four sign/monotonicity classes
    for (const CanonicalTransform tag :
         {CanonicalTransform::Identity, CanonicalTransform::Reverse,
          CanonicalTransform::Reflect, CanonicalTransform::ReflectReverse}) {
      const CanonicalTransform found =
          choose_canonical_transform(curvature_profile(apply_transform(base, tag)));
      if (found != tag) {
        fail += " canonicalization(" + std::string(to_string(tag)) + ") -> " +
                std::string(to_string(found)) + ";";
      }
    }
  }
  {  // definitional arc-length link of the guess: l S = (N-1) h with z = l/(N-1)
    for (const RoundTrip& rt : trips) {
      const ThetaParams& g = rt.outcome.guess.theta;
      const LacSegmentParams& pi = rt.outcome.params_initial;
      const double n1 = static_cast<double>(g.n_points - 1);
      const double rhs = n1 * g.h;
      if (std::abs(pi.length * pi.scale - rhs) > 1e-13 * rhs ||
          std::abs(g.z * pi.scale - g.h) > 1e-13 * g.h) {
        fail += " guess identity l*S != (N-1)h;";
      }
    }
  }
  {  // monotone objective traces on every criterion-3 run
    for (const RoundTrip& rt : trips) {
      const auto& trace = rt.outcome.report.objective_trace;
      for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
        if (trace[i + 1] > trace[i]) {
          fail += " non-monotone trace;";
          break;
        }
      }
    }
  }
  return {6, "invariance suite", fail.empty(),
          fail.empty() ? "rigid-motion <=1e-9, scaling <=1e-3, canonicalization table, "
                         "guess identity l*S=(N-1)h, monotone traces"
                       : fail};
}

// --- criterion 7: box respect ------------------------------------------------

CriterionResult criterion7(const std::vector<RoundTrip>& trips) {
  bool ok = true;
  double worst = 0.0;
  for (const RoundTrip& rt : trips) {
    const auto guess = rt.outcome.guess.theta.to_array();
    const auto final_theta = rt.outcome.report.theta_final.to_array();
    for (std::size_t i = 0; i < kThetaSize; ++i) {
      const double bound = 0.1 * std::abs(guess[i]);
      const double dev = std::abs(final_theta[i] - guess[i]);
      worst = std::max(worst, bound > 0.0 ? dev / bound : 0.0);
      if (dev > bound * (1.0 + 1e-14)) {
        ok = false;
      }
    }
  }
  return {7, "final theta within 10% of the guess", ok,
          "worst |theta* - theta_bar| at " + fmt(100.0 * worst) +
              "% of the allowed 0.1|theta_bar| band"};
}

// --- criterion 8: determinism ------------------------------------------------

CriterionResult criterion8(const std::vector<RoundTrip>& first) {
  const std::vector<RoundTrip> second = run_round_trips();
  bool ok = first.size() == second.size();
  if (ok) {
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (first[i].report_json != second[i].report_json) {
        ok = false;
        break;
      }
    }
  }
  return {8, "repeated runs give byte-identical reports", ok,
          std::to_string(first.size()) + " fit reports serialized twice and compared bytewise"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  std::vector<CriterionResult> results;
  results.push_back(criterion1());
  results.push_back(criterion2());
  const std::vector<RoundTrip> trips = run_round_trips();
  results.push_back(criterion3(trips));
  results.push_back(criterion4());
  results.push_back(criterion5());
  results.push_back(criterion6(trips));
  results.push_back(criterion7(trips));
  results.push_back(criterion8(trips));
  return results;
}

std::string format_acceptance(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const CriterionResult& r : results) {
    out += r.passed ? "[PASS] " : "[FAIL] ";
    out += "criterion " + std::to_string(r.id) + ": " + r.name + " -- " + r.details + "\n";
  }
  return out;
}

}  // namespace lacfit
