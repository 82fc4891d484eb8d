#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "krein/error.hpp"
#include "krein/flow.hpp"
#include "krein/spectral.hpp"
#include "oracles.hpp"

namespace krein {
namespace {

constexpr double kPi = 3.14159265358979323846;

SymmetricCurve curve(std::map<std::pair<int, int>, std::string> m) {
  return SymmetricCurve::from_sources(m);
}

SymmetricCurve constant_curve(const ComplexMat4& a) {
  std::map<std::pair<int, int>, std::string> m;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j).real());
      m[{i, j}] = buf;
    }
  return curve(m);
}

SymmetricCurve smooth_curve() {
  return curve({{{0, 0}, "1 + t"}, {{1, 1}, "1 + sin(t)"}, {{0, 2}, "t*t"}, {{1, 3}, "0.5*t"},
                {{2, 2}, "1"}, {{3, 3}, "1 - t"}, {{0, 1}, "0.2*cos(3*t)"}});
}

TEST(Flow, ZeroCurveKeepsInitialCondition) {
  std::mt19937_64 rng(1);
  const ComplexMat4 g0 = testing::random_symplectic(rng);
  const FlowSolution sol = integrate(SymmetricCurve(), g0, 2.0, 10, 0.0);
  for (const ComplexMat4& g : sol.gammas()) EXPECT_EQ((g - g0).max_abs(), 0.0);
  EXPECT_EQ((endpoint(sol) - g0).max_abs(), 0.0);
  EXPECT_LT(sol.drift(), 1e-14);
  EXPECT_TRUE(sol.conforming());
}

TEST(Flow, InitialConditionIsStoredExactly) {
  std::mt19937_64 rng(2);
  const ComplexMat4 g0 = testing::random_symplectic(rng);
  const FlowSolution sol = integrate(smooth_curve(), g0, 0.5, 8, 0.0);
  EXPECT_EQ((sol.gammas().front() - g0).max_abs(), 0.0);
  EXPECT_EQ(sol.steps(), 8);
  EXPECT_DOUBLE_EQ(sol.t_end(), 0.5);
}

TEST(Flow, ConstantCurveMatchesMatrixExponential) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 5; ++k) {
    const ComplexMat4 a = testing::random_symmetric(rng);
    const SymmetricCurve c = constant_curve(a);
    const ComplexMat4 exact = testing::expm(j4() * eval_matrix(c, 0, 0));
    const FlowSolution sol = integrate(c, ComplexMat4::identity(), 1.0, 1000, 0.0);
    EXPECT_LT((endpoint(sol) - exact).max_abs(), 1e-8);
  }
}

TEST(Flow, IdentityHamiltonianRotatesBothPlanes) {
  const double theta = 1.1;
  const SymmetricCurve c = curve({{{0, 0}, "1"}, {{1, 1}, "1"}, {{2, 2}, "1"}, {{3, 3}, "1"}});
  const FlowSolution sol = integrate(c, ComplexMat4::identity(), theta, 2000, 0.0);
  const Complex up = std::polar(1.0, theta);
  EXPECT_LT(testing::set_distance(eigenvalues(endpoint(sol)), {up, up, std::conj(up), std::conj(up)}),
            1e-6);  // double roots resolve to sqrt of the RK4 error
}

TEST(Flow, SemigroupProperty) {
  std::mt19937_64 rng(4);
  const ComplexMat4 g0 = testing::random_symplectic(rng);
  const SymmetricCurve c = smooth_curve();
  const FlowSolution whole = integrate(c, g0, 1.0, 1000, 0.0);
  const FlowSolution first = integrate(c, g0, 0.5, 500, 0.0);
  FlowOptions later;
  later.t0 = 0.5;
  const FlowSolution second = integrate(c, endpoint(first), 0.5, 500, 0.0, later);
  EXPECT_LT((endpoint(whole) - endpoint(second)).max_abs(), 1e-8);
}

TEST(Flow, BackwardIntegrationInvertsForward) {
  std::mt19937_64 rng(5);
  const ComplexMat4 g0 = testing::random_symplectic(rng);
  const SymmetricCurve c = smooth_curve();
  const FlowSolution fwd = integrate(c, g0, 0.7, 700, 0.0);
  FlowOptions back;
  back.t0 = 0.7;
  const FlowSolution bwd = integrate(c, endpoint(fwd), -0.7, 700, 0.0, back);
  EXPECT_LT((endpoint(bwd) - g0).max_abs(), 1e-9);
}

TEST(Flow, EndpointIsSymplecticWithinTenTimesDrift) {
  const FlowSolution sol = integrate(smooth_curve(), ComplexMat4::identity(), 3.0, 300, 0.0);
  ASSERT_GT(sol.drift(), 0.0);
  EXPECT_TRUE(is_symplectic(endpoint(sol), 10.0 * sol.drift()));
}

TEST(Flow, SolutionsAreExactlyReal) {
  std::mt19937_64 rng(6);
  const FlowSolution sol = integrate(smooth_curve(), testing::random_symplectic(rng), 2.0, 200, 0.3);
  for (const ComplexMat4& g : sol.gammas()) EXPECT_EQ(g.max_imag(), 0.0);
}

TEST(Flow, DriftBelowToleranceAtThousandStepsPerUnitTime) {
  // Positive definite, hence bounded solutions.
  const SymmetricCurve bounded = curve({{{0, 0}, "1 + 0.3*sin(t)"}, {{1, 1}, "2 + 0.2*cos(t)"},
                                        {{2, 2}, "1"}, {{3, 3}, "1.5"}, {{0, 1}, "0.1*sin(2*t)"}});
  for (const double T : {1.0, 2.0, 5.0}) {
    const FlowSolution sol = integrate(bounded, ComplexMat4::identity(), T,
                                       static_cast<int>(1000 * T), 0.0);
    EXPECT_LE(sol.drift(), 1e-8) << T;
    EXPECT_TRUE(sol.conforming());
  }
}

TEST(Flow, FourthOrderConvergence) {
  const SymmetricCurve c = smooth_curve();
  const ComplexMat4 g20 = endpoint(integrate(c, ComplexMat4::identity(), 1.0, 20, 0.0));
  const ComplexMat4 g40 = endpoint(integrate(c, ComplexMat4::identity(), 1.0, 40, 0.0));
  const ComplexMat4 g80 = endpoint(integrate(c, ComplexMat4::identity(), 1.0, 80, 0.0));
  const double ratio = (g20 - g40).max_abs() / (g40 - g80).max_abs();
  EXPECT_GE(ratio, 12.0);
  EXPECT_LE(ratio, 20.0);
}

TEST(Flow, Preconditions) {
  const SymmetricCurve c = smooth_curve();
  EXPECT_THROW(integrate(c, ComplexMat4::scalar(2.0), 1.0, 10, 0.0), NonSymplecticError);
  EXPECT_THROW(integrate(c, ComplexMat4::identity(), 1.0, 1, 0.0), PreconditionError);
  EXPECT_THROW(integrate(c, ComplexMat4::identity(), 0.0, 10, 0.0), PreconditionError);
  EXPECT_THROW(integrate(curve({{{0, 0}, "1/(t-0.5)"}}), ComplexMat4::identity(), 1.0, 2, 0.0),
               EntryDomainError);
}

TEST(Flow, SymplecticInverse) {
  std::mt19937_64 rng(7);
  const ComplexMat4 m = testing::random_symplectic(rng);
  EXPECT_LT((symplectic_inverse(m) * m - ComplexMat4::identity()).max_abs(), 1e-12);
  EXPECT_LT((symplectic_inverse(m) - testing::inverse(m)).max_abs(), 1e-10);
}

TEST(Flow, SimpsonWeightsIntegrateCubicsExactly) {
  for (const int n : {2, 3, 8, 9}) {
    const double h = 1.0 / n;
    const auto w = simpson_weights(n, h);
    ASSERT_EQ(w.size(), static_cast<std::size_t>(n + 1));
    double total = 0.0, quad = 0.0;
    for (int i = 0; i <= n; ++i) {
      total += w[static_cast<std::size_t>(i)];
      quad += w[static_cast<std::size_t>(i)] * std::pow(i * h, 2);
    }
    EXPECT_NEAR(total, 1.0, 1e-14);
    // The trapezoid closing panel of an odd grid is only second order.
    EXPECT_NEAR(quad, 1.0 / 3.0, n % 2 == 0 ? 1e-14 : 0.5 * h * h * h);
  }
}

TEST(Flow, PerturbationHamiltonianVanishesWithoutEps) {
  const SymmetricCurve c = smooth_curve();
  const FlowSolution sol = integrate(c, ComplexMat4::identity(), 1.0, 100, 0.0);
  EXPECT_EQ(perturbation_hamiltonian(c, sol, 1.0).matrix.max_abs(), 0.0);
}

TEST(Flow, PerturbationHamiltonianOfStaticBase) {
  const SymmetricCurve c = curve({{{0, 0}, "2*eps"}, {{1, 2}, "-eps"}, {{3, 3}, "0.5*eps"}});
  const double T = 1.7;
  const FlowSolution sol = integrate(c, ComplexMat4::identity(), T, 100, 0.0);
  const PerturbationHamiltonian b = perturbation_hamiltonian(c, sol, T);
  const ComplexMat4 expected = T * d_eps_matrix(c, 0.0, 0.0);
  EXPECT_LT((b.matrix - expected).max_abs(), 1e-13);
  EXPECT_FALSE(b.asymmetry_warning);
}

TEST(Flow, PerturbationHamiltonianIsIndependentOfInitialCondition) {
  const SymmetricCurve c = curve({{{0, 0}, "1 + eps*cos(t)"}, {{1, 1}, "1"}, {{2, 2}, "1 + eps"},
                                  {{3, 3}, "2"}, {{0, 3}, "0.3*eps*t"}});
  std::mt19937_64 rng(8);
  const FlowSolution a = integrate(c, ComplexMat4::identity(), 1.0, 400, 0.0);
  const FlowSolution b = integrate(c, testing::random_symplectic(rng), 1.0, 400, 0.0);
  const ComplexMat4 ba = perturbation_hamiltonian(c, a, 1.0).matrix;
  const ComplexMat4 bb = perturbation_hamiltonian(c, b, 1.0).matrix;
  EXPECT_LT((ba - bb).max_abs(), 1e-9 * ba.max_abs());
}

TEST(Flow, PerturbationHamiltonianMatchesFiniteDifferenceOfEndpoint) {
  // gamma(T, eps) ~ gamma(T, 0) + eps J B gamma(T, 0) to first order.
  const SymmetricCurve c = curve({{{0, 0}, "1 + eps*cos(t)"}, {{1, 1}, "1"}, {{2, 2}, "1 + eps"},
                                  {{3, 3}, "2"}, {{0, 3}, "0.3*eps*t"}});
  const double T = 1.0, h = 1e-5;
  const FlowSolution base = integrate(c, ComplexMat4::identity(), T, 1000, 0.0);
  const ComplexMat4 plus = endpoint(integrate(c, ComplexMat4::identity(), T, 1000, h));
  const ComplexMat4 minus = endpoint(integrate(c, ComplexMat4::identity(), T, 1000, -h));
  const ComplexMat4 deriv = (1.0 / (2.0 * h)) * (plus - minus);
  const ComplexMat4 b = perturbation_hamiltonian(c, base, T).matrix;
  EXPECT_LT((deriv - j4() * b * endpoint(base)).max_abs(), 1e-7);
}

TEST(Flow, PerturbationHamiltonianRejectsMismatchedHorizon) {
  const SymmetricCurve c = curve({{{0, 0}, "eps"}});
  const FlowSolution sol = integrate(c, ComplexMat4::identity(), 1.0, 10, 0.0);
  EXPECT_THROW(perturbation_hamiltonian(c, sol, 2.0), PreconditionError);
}

}  // namespace
}  // namespace krein
