#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "lacfit/errors.hpp"
#include "lacfit/initial_guess.hpp"
#include "lacfit/synth.hpp"
#include "oracles.hpp"

using namespace lacfit;

namespace {

DiscreteCurve unit_circle(double delta, std::size_t n) {
  std::vector<Vec2> pts(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = delta * static_cast<double>(k);
    pts[k] = {std::cos(a), std::sin(a)};
  }
  return DiscreteCurve(std::move(pts), 2.0 * std::sin(delta / 2.0));
}

DiscreteCurve straight_line(std::size_t n) {
  std::vector<Vec2> pts(n);
  for (std::size_t k = 0; k < n; ++k) {
    pts[k] = {static_cast<double>(k), 0.0};
  }
  return DiscreteCurve(std::move(pts), 1.0);
}

double angle_distance(double a, double b) {
  const double two_pi = 2.0 * std::numbers::pi;
  double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

CurvatureProfile synthetic_profile(std::vector<double> r_log, std::vector<double> delta_r) {
  CurvatureProfile prof;
  prof.h = 1.0;
  prof.kappa.resize(r_log.size());
  for (std::size_t i = 0; i < r_log.size(); ++i) {
    prof.kappa[i] = std::exp(-r_log[i]);
  }
  prof.r_log = std::move(r_log);
  prof.delta_r = std::move(delta_r);
  return prof;
}

}  // namespace

TEST_CASE("straight line has exactly zero curvature") {
  const CurvatureProfile prof = curvature_profile(straight_line(10));
  for (double k : prof.kappa) {
    CHECK(k == 0.0);
  }
}

TEST_CASE("circle curvature matches the inscribed-circle closed form") {
  const double delta = 0.05;
  const CurvatureProfile prof = curvature_profile(unit_circle(delta, 40));
  const double expected = 1.0 / std::cos(delta / 2.0);
  for (double k : prof.kappa) {
    CHECK(k == doctest::Approx(expected).epsilon(1e-12));
  }

  // O(h^2) convergence to the true curvature under h-halving.
  std::vector<double> errors;
  for (const double d : {0.1, 0.05, 0.025}) {
    const CurvatureProfile p = curvature_profile(unit_circle(d, 40));
    double worst = 0.0;
    for (double k : p.kappa) {
      worst = std::max(worst, std::abs(k - 1.0));
    }
    errors.push_back(worst);
  }
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    const double ratio = errors[i] / errors[i + 1];
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
  }
}

TEST_CASE("reflection negates the discrete curvature pointwise") {
  const LacSegmentParams p{2.0, 1.0, 0.1, 0.8, 0.7, 0.0, 0.0};
  const DiscreteCurve c = sample_lac(p, 60);
  const CurvatureProfile prof = curvature_profile(c);
  const CurvatureProfile reflected =
      curvature_profile(apply_transform(c, CanonicalTransform::Reflect));
  for (std::size_t i = 0; i < prof.kappa.size(); ++i) {
    CHECK(reflected.kappa[i] == -prof.kappa[i]);
  }
}

TEST_CASE("cusp raises with the offending index") {
  const std::vector<Vec2> pts{{0.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
  try {
    curvature_profile(DiscreteCurve::unchecked(pts, 1.0));
    FAIL("expected CuspError");
  } catch (const CuspError& e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("canonical transform table") {
  auto tag_for = [](std::vector<double> kappa) {
    CurvatureProfile prof;
    prof.h = 0.1;
    prof.kappa = std::move(kappa);
    return choose_canonical_transform(prof);
  };
  CHECK(tag_for({3.0, 2.0, 1.0}) == CanonicalTransform::Identity);
  CHECK(tag_for({1.0, 2.0, 3.0}) == CanonicalTransform::ReflectReverse);
  CHECK(tag_for({-1.0, -2.0, -3.0}) == CanonicalTransform::Reverse);
  CHECK(tag_for({-3.0, -2.0, -1.0}) == CanonicalTransform::Reflect);
  CHECK_THROWS_AS(tag_for({1.0, -1.0, 2.0}), NotLacSegmentError);
  CHECK_THROWS_AS(tag_for({1.0, 1.0, 1.0}), NotLacSegmentError);
  CHECK_THROWS_AS(tag_for({2.0, 1.0, 1.5}), NotLacSegmentError);
  CHECK_THROWS_AS(tag_for({0.0, 0.0, 0.0}), DegenerateInputError);
}

TEST_CASE("canonicalized curves profile to positive decreasing curvature") {
  const LacSegmentParams p{2.0, 1.0, 0.1, 0.8, 0.4, 0.0, 0.0};
  const DiscreteCurve base = sample_lac(p, 80);
  for (const auto tag : {CanonicalTransform::Identity, CanonicalTransform::Reverse,
                         CanonicalTransform::Reflect, CanonicalTransform::ReflectReverse}) {
    const DiscreteCurve moved = apply_transform(base, tag);
    const CanonicalTransform found = choose_canonical_transform(curvature_profile(moved));
    CHECK(found == tag);
    const CurvatureProfile canon = curvature_profile(apply_transform(moved, found));
    for (std::size_t i = 0; i < canon.kappa.size(); ++i) {
      CHECK(canon.kappa[i] > 0.0);
      if (i > 0) {
        CHECK(canon.kappa[i] < canon.kappa[i - 1]);
      }
    }
  }
}

TEST_CASE("alpha recovery on exact samples") {
  for (const double alpha : {2.0, -1.0}) {
    const LacSegmentParams p{alpha, 1.0, alpha > 0 ? 0.1 : -0.2, 0.5, 0.3, 0.0, 0.0};
    const DiscreteCurve c = sample_lac(p, 400);
    const double a = guess_alpha(curvature_profile(c));
    CHECK(a == doctest::Approx(alpha).epsilon(0.025));
  }
}

TEST_CASE("alpha estimator equals the normal-equations line fit") {
  // Two (R, log Delta R) pairs pin the line exactly: slope -1 gives alpha 1.
  const CurvatureProfile prof =
      synthetic_profile({1.0, 2.0, 1.5}, {std::exp(-1.0), std::exp(-2.0)});
  const double a = guess_alpha(prof);
  const auto [intercept, slope] =
      oracles::normal_equations_line({1.0, 2.0}, {-1.0, -2.0});
  CHECK(a == doctest::Approx(-slope).epsilon(1e-12));
  CHECK(a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(intercept == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("alpha estimator error paths") {
  CHECK_THROWS_AS(guess_alpha(synthetic_profile({1.0, 2.0, 1.5}, {0.5, -0.1})),
                  NoisyDataError);
  CHECK_THROWS_AS(guess_alpha(synthetic_profile({1.0, 1.0, 1.0}, {0.5, 0.5})),
                  DegenerateInputError);
  // Negative curvature anywhere means the profile was never canonicalized.
  CurvatureProfile negative;
  negative.h = 1.0;
  negative.kappa = {1.0, -0.5, 0.2};
  CHECK_THROWS_AS(guess_alpha(negative), NoisyDataError);
  CHECK_THROWS_AS(guess_alpha(curvature_profile(straight_line(8))), NoisyDataError);
}

TEST_CASE("scale recovery and its covariance") {
  for (const double scale : {1.0, 2.0}) {
    const LacSegmentParams p{2.0, scale, 0.1, 0.8, 0.3, 0.0, 0.0};
    const DiscreteCurve c = sample_lac(p, 400);
    const CurvatureProfile prof = curvature_profile(c);
    const double alpha = guess_alpha(prof);
    const double s = guess_scale(prof, alpha, c.step());
    CHECK(s == doctest::Approx(scale).epsilon(0.05));
  }

  // Scaling the input by c scales the estimate by c.
  const LacSegmentParams p{2.0, 1.0, 0.1, 0.8, 0.3, 0.0, 0.0};
  const DiscreteCurve c = sample_lac(p, 200);
  const CurvatureProfile prof = curvature_profile(c);
  const double s1 = guess_scale(prof, guess_alpha(prof), c.step());

  const double factor = 3.5;
  std::vector<Vec2> scaled = c.points();
  for (Vec2& q : scaled) {
    q = factor * q;
  }
  const DiscreteCurve cs(std::move(scaled), factor * c.step());
  const CurvatureProfile prof_s = curvature_profile(cs);
  const double s2 = guess_scale(prof_s, guess_alpha(prof_s), cs.step());
  CHECK(s2 / s1 == doctest::Approx(factor).epsilon(1e-9));
}

TEST_CASE("s0 and z recovery") {
  const LacSegmentParams p{2.0, 1.0, 0.1, 0.8, 0.3, 0.0, 0.0};
  const std::size_t n = 400;
  const DiscreteCurve c = sample_lac(p, n);
  const CurvatureProfile prof = curvature_profile(c);
  const double alpha = guess_alpha(prof);
  const double scale = guess_scale(prof, alpha, c.step());
  const ArcShiftGuess g = guess_s0_z(prof, alpha, scale, c.step(), n);

  CHECK(std::abs(g.s0 - 0.1) <= 0.02);
  // Definitional identities: z S = h and z (N-1) = l up to round-trip error.
  CHECK(g.z * scale == doctest::Approx(c.step()).epsilon(1e-15));
  CHECK(g.z * static_cast<double>(n - 1) == doctest::Approx(p.length).epsilon(0.05));
}

TEST_CASE("phi and origin recovery") {
  SUBCASE("basic pose gives nearly zero pose offsets") {
    // s0 = 0, so the curve head sits at the basic-curve origin.
    const LacSegmentParams p{2.0, 1.0, 0.0, 0.8, 0.0, 0.0, 0.0};
    const std::size_t n = 400;
    const DiscreteCurve c = sample_lac(p, n);
    const CurvatureProfile prof = curvature_profile(c);
    const PoseGuess pose = guess_phi_origin(c, prof, 2.0, 0.0, c.step());
    CHECK(angle_distance(pose.phi, 0.0) <= 0.02);
    CHECK(std::abs(pose.x0) <= 0.02);
    CHECK(std::abs(pose.y0) <= 0.02);
  }
  SUBCASE("rigid motion shifts phi by psi and keeps the fit tracking") {
    const LacSegmentParams p{2.0, 1.0, 0.1, 0.8, 0.4, 0.6, -0.2};
    const DiscreteCurve c = sample_lac(p, 300);
    const InitialGuess base = initial_guess(c);

    const double psi = 1.1;
    const Rot2 rot(psi);
    const Vec2 shift{2.0, 3.0};
    std::vector<Vec2> moved;
    moved.reserve(c.size());
    for (const Vec2& q : c.points()) {
      moved.push_back(rot(q) + shift);
    }
    const DiscreteCurve cm(std::move(moved), c.step());
    const InitialGuess got = initial_guess(cm);
    CHECK(angle_distance(got.theta.phi, base.theta.phi + psi) <= 1e-6);

    const DiscreteCurve model = reconstruct(got.theta);
    double worst = 0.0;
    for (std::size_t i = 0; i < cm.size(); ++i) {
      worst = std::max(worst, norm(model[i] - cm[i]));
    }
    const DiscreteCurve base_model = reconstruct(base.theta);
    double base_worst = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      base_worst = std::max(base_worst, norm(base_model[i] - c[i]));
    }
    CHECK(worst <= base_worst + 1e-6);
  }
  SUBCASE("two-point curve reduces to a single-term mean") {
    const DiscreteCurve c({{0.0, 0.0}, {std::cos(0.8), std::sin(0.8)}}, 1.0);
    const CurvatureProfile prof = curvature_profile(c);
    const PoseGuess pose = guess_phi_origin(c, prof, 2.0, 0.1, 0.05);
    const double expected = normalize_angle(0.8 - basic_lac_turning_angle(2.0, 0.1));
    CHECK(pose.phi == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("initial guess round trip from a known theta") {
  const ThetaParams truth{1.3, -0.7, 0.004, 0.8, 0.0032, 0.12, 2.0, 400};
  const DiscreteCurve data = reconstruct(truth);
  const InitialGuess got = initial_guess(data);
  CHECK(got.transform == CanonicalTransform::Identity);
  CHECK(got.theta.h == truth.h);
  CHECK(got.theta.alpha == doctest::Approx(truth.alpha).epsilon(0.05));
  CHECK(got.theta.z == doctest::Approx(truth.z).epsilon(0.05));
  CHECK(got.theta.s0 == doctest::Approx(truth.s0).epsilon(0.05));
  CHECK(angle_distance(got.theta.phi, truth.phi) <= 0.05 * std::abs(truth.phi));
  CHECK(got.theta.x0 == doctest::Approx(truth.x0).epsilon(0.05));
  CHECK(got.theta.y0 == doctest::Approx(truth.y0).epsilon(0.05));
}

TEST_CASE("reflected input gives the same theta with the reflect tag") {
  const ThetaParams truth{1.3, -0.7, 0.004, 0.8, 0.0032, 0.12, 2.0, 300};
  const DiscreteCurve data = reconstruct(truth);
  const InitialGuess base = initial_guess(data);
  const InitialGuess refl = initial_guess(apply_transform(data, CanonicalTransform::Reflect));
  CHECK(refl.transform == CanonicalTransform::Reflect);
  CHECK(refl.theta.x0 == base.theta.x0);
  CHECK(refl.theta.y0 == base.theta.y0);
  CHECK(refl.theta.phi == base.theta.phi);
  CHECK(refl.theta.z == base.theta.z);
  CHECK(refl.theta.s0 == base.theta.s0);
  CHECK(refl.theta.alpha == base.theta.alpha);
}

TEST_CASE("degenerate and undersized inputs") {
  CHECK_THROWS_AS(initial_guess(straight_line(50)), DegenerateInputError);
  CHECK_THROWS_AS(initial_guess(straight_line(4)), DegenerateInputError);
}

TEST_CASE("alpha estimate is similarity invariant") {
  const LacSegmentParams p{2.0, 5.0, 0.1, 0.8, 0.2, 0.0, 0.0};
  const DiscreteCurve c = sample_lac(p, 150);
  const double a0 = guess_alpha(curvature_profile(c));

  const Rot2 rot(0.7);
  std::vector<Vec2> moved;
  for (const Vec2& q : c.points()) {
    moved.push_back(rot(q) + Vec2{3.0, -2.0});
  }
  const double a1 = guess_alpha(curvature_profile(DiscreteCurve(std::move(moved), c.step())));
  CHECK(std::abs(a1 - a0) <= 1e-9);

  std::vector<Vec2> scaled;
  for (const Vec2& q : c.points()) {
    scaled.push_back(2.5 * q);
  }
  const double a2 =
      guess_alpha(curvature_profile(DiscreteCurve(std::move(scaled), 2.5 * c.step())));
  CHECK(std::abs(a2 - a0) <= 1e-3);
}

TEST_CASE("guess objective vanishes quadratically with the step") {
  // N h fixed at 1.6 while h shrinks; objective(theta_bar)/(N h^2) must fall.
  const LacSegmentParams p{2.0, 2.0, 0.1, 0.8, 0.3, 0.5, 0.5};
  std::vector<double> normalized;
  for (const std::size_t n : {100, 200, 400}) {
    const DiscreteCurve c = sample_lac(p, n);
    const InitialGuess g = initial_guess(c);
    const double value = objective(g.theta, c);
    normalized.push_back(value / (static_cast<double>(n) * c.step() * c.step()));
  }
  CHECK(normalized[1] < normalized[0]);
  CHECK(normalized[2] < normalized[1]);
}
