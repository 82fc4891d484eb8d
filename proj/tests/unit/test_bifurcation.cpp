#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "krein/bifurcation.hpp"
#include "krein/error.hpp"
#include "oracles.hpp"

namespace krein {
namespace {

using std::numbers::pi;
using testing::rel_diff;
const RealMat2 kId{{{1.0, 0.0}, {0.0, 1.0}}};

// f'(0) for a polynomial of degree <= 4, exact up to rounding.
Complex stencil_derivative(const std::function<Complex(double)>& f, double h) {
  return (8.0 * (f(h) - f(-h)) - (f(2 * h) - f(-2 * h))) / (12.0 * h);
}

struct Case {
  ComplexMat4 gamma0;
  ComplexMat4 a0;
  JordanPair pair;
};

Case random_setup(std::mt19937_64& rng) {
  const auto sc = testing::random_jordan(rng);
  const auto l0 = detect_double_unitary(sc.gamma0, 1e-5, 1e-8);
  if (!l0) throw std::runtime_error("generator produced no double eigenvalue");
  return {sc.gamma0, testing::random_symmetric(rng), jordan_pair(sc.gamma0, *l0)};
}

TEST(Bifurcation, LadderWithZeroVelocity) {
  const ComplexMat4 g = make_jordan_symplectic(pi / 2, kId);
  const CoefficientLadder l = ladder(g, ComplexMat4::zero(), {0.0, 1.0});
  EXPECT_EQ(l.c31, Complex(0.0));
  EXPECT_EQ(l.c21, Complex(0.0));
  EXPECT_EQ(l.a_squared, Complex(0.0));
}

TEST(Bifurcation, LadderStaticCoefficients) {
  std::mt19937_64 rng(51);
  for (int k = 0; k < 10; ++k) {
    const Case s = random_setup(rng);
    const Complex l = s.pair.lambda0, d = l - std::conj(l);
    const CoefficientLadder lad = ladder(s.gamma0, j4() * s.a0 * s.gamma0, l);
    const double scale = std::max(1.0, s.gamma0.max_abs());
    EXPECT_LT(std::abs(lad.c[0]), 1e-8 * std::pow(scale, 4));
    EXPECT_LT(std::abs(lad.c[1]), 1e-8 * std::pow(scale, 3));
    EXPECT_LT(std::abs(lad.c[2] - d * d), 1e-8);
    EXPECT_LT(std::abs(lad.c[3] - 2.0 * d), 1e-8);
    EXPECT_EQ(lad.c[4], Complex(1.0));
    EXPECT_LT(std::abs(lad.c[2] * lad.a_squared - lad.c31), 1e-12 * std::abs(lad.c31));
  }
}

TEST(Bifurcation, LadderMatchesDeterminantStencil) {
  std::mt19937_64 rng(53);
  for (int k = 0; k < 10; ++k) {
    const Case s = random_setup(rng);
    const Complex l0 = s.pair.lambda0;
    const ComplexMat4 v = j4() * s.a0 * s.gamma0;
    const CoefficientLadder lad = ladder(s.gamma0, v, l0);
    // det(lambda Id - gamma0 - t v) is quartic in both lambda and t.
    auto f = [&](Complex lambda, double t) {
      return testing::cofactor_det(ComplexMat4::scalar(lambda) - s.gamma0 - t * v);
    };
    const Complex c31 = -stencil_derivative([&](double t) { return f(l0, t); }, 0.5);
    const Complex c21 = -stencil_derivative(
        [&](double t) {
          return stencil_derivative([&](double x) { return f(l0 + x, t); }, 0.5);
        },
        0.5);
    EXPECT_LT(rel_diff(lad.c31, c31), 1e-8);
    EXPECT_LT(rel_diff(lad.c21, c21), 1e-8);
  }
}

TEST(Bifurcation, DualPathLadder) {
  std::mt19937_64 rng(57);
  for (int k = 0; k < 20; ++k) {
    const Case s = random_setup(rng);
    const CoefficientLadder lad = ladder(s.gamma0, j4() * s.a0 * s.gamma0, s.pair.lambda0);
    const LadderClosedForm cf = ladder_closed_form(s.pair, s.a0);
    EXPECT_LT(rel_diff(lad.c31, cf.c31), 1e-9);
    EXPECT_LT(rel_diff(lad.c21, cf.c21), 1e-9);
  }
}

TEST(Bifurcation, LadderPreconditions) {
  const ComplexMat4 g = make_jordan_symplectic(pi / 3, kId);
  EXPECT_THROW(ladder(g, ComplexMat4::zero(), {2.0, 0.0}), PreconditionError);
  EXPECT_THROW(ladder(ComplexMat4::identity(), ComplexMat4::zero(), 1.0), ExcludedCaseError);
}

TEST(Bifurcation, ExpansionInvariants) {
  std::mt19937_64 rng(59);
  for (int k = 0; k < 20; ++k) {
    const Case s = random_setup(rng);
    const ExpansionCoefficients e = expansion_t(s.pair, s.a0);
    const Complex l = s.pair.lambda0;
    EXPECT_LT(std::abs(e.kappa_imag), 1e-8 * std::max(1.0, std::abs(e.kappa)));
    EXPECT_LT(std::abs((std::conj(l) * e.sum_derivative).real() - e.kappa),
              1e-8 * std::max(1.0, std::abs(e.kappa)));
    EXPECT_LT(std::abs((e.bracket - e.kappa).real()), 1e-8 * std::max(1.0, std::abs(e.bracket)));
    EXPECT_EQ(e.second_order, e.sum_derivative / 2.0);
    EXPECT_EQ(e.sum_derivative, l * e.bracket);
    EXPECT_LT(std::abs(e.a * e.a - l * l * e.kappa), 1e-10 * std::max(1.0, std::abs(e.kappa)));
    EXPECT_LT(std::abs(std::norm(e.a) - std::abs(e.kappa)), 1e-10 * std::max(1.0, std::abs(e.kappa)));
    EXPECT_GE(e.a.real(), 0.0);  // principal root
    EXPECT_EQ(e.numerator, inner(s.a0 * s.pair.eta1, s.pair.eta1));
  }
}

TEST(Bifurcation, LadderSquareRootMatchesExpansion) {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 10; ++k) {
    const Case s = random_setup(rng);
    const ExpansionCoefficients e = expansion_t(s.pair, s.a0);
    const CoefficientLadder lad = ladder(s.gamma0, j4() * s.a0 * s.gamma0, s.pair.lambda0);
    EXPECT_LT(rel_diff(lad.a_squared, e.a * e.a), 1e-9);
  }
}

TEST(Bifurcation, GaugeInvariance) {
  std::mt19937_64 rng(67);
  std::normal_distribution<double> n;
  const Case s = random_setup(rng);
  const ExpansionCoefficients ref = expansion_t(s.pair, s.a0);
  for (int k = 0; k < 20; ++k) {
    Complex c{n(rng), n(rng)};
    const Complex d{n(rng), n(rng)};
    const ExpansionCoefficients e = expansion_t(s.pair.regauged(c, d), s.a0);
    EXPECT_LT(std::abs(e.kappa - ref.kappa), 1e-9 * std::abs(ref.kappa));
    EXPECT_LT(rel_diff(e.a * e.a, ref.a * ref.a), 1e-9);
    EXPECT_LT(rel_diff(e.second_order, ref.second_order), 1e-9);
    EXPECT_LT(rel_diff(e.sum_derivative, ref.sum_derivative), 1e-9);
  }
}

TEST(Bifurcation, ConjugateSymmetry) {
  std::mt19937_64 rng(71);
  for (int k = 0; k < 10; ++k) {
    const Case s = random_setup(rng);
    const ExpansionCoefficients e = expansion_t(s.pair, s.a0);
    const ExpansionCoefficients c = expansion_t(s.pair.conjugated(), s.a0);
    EXPECT_LT(std::abs(c.kappa - e.kappa), 1e-12 * std::abs(e.kappa));
    EXPECT_LT(rel_diff(c.sum_derivative, std::conj(e.sum_derivative)), 1e-12);
    EXPECT_LT(rel_diff(c.a * c.a, std::conj(e.a * e.a)), 1e-12);
  }
}

TEST(Bifurcation, DegenerateNumerator) {
  const ComplexMat4 g = make_jordan_symplectic(pi / 3, kId);
  const JordanPair p = jordan_pair(g, std::polar(1.0, pi / 3));
  EXPECT_THROW(expansion_t(p, ComplexMat4::zero()), DegenerateCaseError);
  EXPECT_THROW(expansion_eps(p, ComplexMat4::zero()), DegenerateCaseError);
  try {
    expansion_t(p, 1e-13 * ComplexMat4::identity());
    FAIL();
  } catch (const DegenerateCaseError& e) {
    EXPECT_NEAR(e.measured(), 2e-13, 1e-20);  // |<eta1, eta1>| = 2 in the default gauge
  }
}

TEST(Bifurcation, EpsExpansionOfStaticBaseReducesToTimeExpansion) {
  std::mt19937_64 rng(73);
  const Case s = random_setup(rng);
  const double T = 2.5;
  const ExpansionCoefficients t = expansion_t(s.pair, T * s.a0);
  const ExpansionCoefficients e = expansion_eps(s.pair, T * s.a0);
  EXPECT_EQ(t.kappa, e.kappa);
  EXPECT_EQ(t.sum_derivative, e.sum_derivative);
}

ExpansionCoefficients with_kappa(double kappa) {
  ExpansionCoefficients e;
  e.kappa = kappa;
  return e;
}

TEST(Bifurcation, ClassifyStability) {
  const StabilityVerdict up = classify_stability(with_kappa(0.7));
  EXPECT_EQ(up.verdict, Stability::unstable_forward_stable_backward);
  EXPECT_EQ(up.unstable_direction, 1);
  EXPECT_EQ(up.kappa, 0.7);
  const StabilityVerdict down = classify_stability(with_kappa(-0.7));
  EXPECT_EQ(down.verdict, Stability::stable_forward_unstable_backward);
  EXPECT_EQ(down.unstable_direction, -1);
  EXPECT_THROW(classify_stability(with_kappa(0.0)), InconclusiveError);
  EXPECT_THROW(classify_stability(with_kappa(1e-12)), InconclusiveError);
  EXPECT_EQ(to_string(Stability::unstable_forward_stable_backward), "unstable_forward_stable_backward");
  EXPECT_EQ(to_string(Stability::stable_forward_unstable_backward), "stable_forward_unstable_backward");
}

TEST(Bifurcation, PredictBranches) {
  ExpansionCoefficients e;
  e.a = {0.3, 0.8};
  e.second_order = {-0.1, 0.25};
  const Complex l0 = std::polar(1.0, 1.0);
  const auto [z1, z2] = predict_branches(e, l0, 0.0);
  EXPECT_EQ(z1, l0);
  EXPECT_EQ(z2, l0);
  for (const double s : {1e-8, 1e-4, 0.3}) {
    const auto [b1, b2] = predict_branches(e, l0, s);
    EXPECT_LT(std::abs(b1 + b2 - 2.0 * l0 - 2.0 * e.second_order * s), 1e-15);
    EXPECT_LT(std::abs(b2 - b1 - 2.0 * e.a * std::sqrt(s)), 1e-15);
  }
  EXPECT_THROW(predict_branches(e, l0, -1e-4), PreconditionError);
  const auto [n1, n2] = predict_branches(e, l0, -1e-4, true);
  EXPECT_LT(std::abs(n2 - n1 - 2.0 * Complex(0, 1) * e.a * 1e-2), 1e-15);
}

}  // namespace
}  // namespace krein
