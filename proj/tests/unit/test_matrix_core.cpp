#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "krein/error.hpp"
#include "krein/matrix_core.hpp"
#include "oracles.hpp"

namespace krein {
namespace {

using testing::cofactor_det;
using testing::rel_diff;

constexpr Complex I{0.0, 1.0};

TEST(MatrixCore, J4SquaresToMinusIdentityAndIsAntisymmetric) {
  EXPECT_EQ((j4() * j4() + ComplexMat4::identity()).max_abs(), 0.0);
  EXPECT_EQ((j4().transpose() + j4()).max_abs(), 0.0);
}

TEST(MatrixCore, InnerConjugatesSecondSlot) {
  EXPECT_EQ(inner(ComplexVec4::unit(0), ComplexVec4::unit(0)), Complex(1.0));
  EXPECT_EQ(inner(ComplexVec4::unit(0), ComplexVec4::unit(1)), Complex(0.0));
  EXPECT_EQ(inner(ComplexVec4(I, 0, 0, 0), ComplexVec4(1, 0, 0, 0)), I);
  EXPECT_EQ(inner(ComplexVec4(1, 0, 0, 0), ComplexVec4(I, 0, 0, 0)), -I);
}

TEST(MatrixCore, SymplecticFormExamples) {
  EXPECT_EQ(symplectic_form(ComplexVec4::unit(0), ComplexVec4::unit(2)), Complex(1.0));
  EXPECT_EQ(symplectic_form(ComplexVec4::unit(0), ComplexVec4::unit(0)), Complex(0.0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  for (int k = 0; k < 20; ++k) {
    ComplexVec4 x, y;
    for (int i = 0; i < 4; ++i) {
      x[i] = {n(rng), n(rng)};
      y[i] = {n(rng), n(rng)};
    }
    EXPECT_NEAR(symplectic_form(x, x).real(), 0.0, 1e-14);
    EXPECT_LT(std::abs(symplectic_form(x, y) + std::conj(symplectic_form(y, x))), 1e-14);
  }
}

TEST(MatrixCore, IsSymplecticExamples) {
  EXPECT_TRUE(is_symplectic(ComplexMat4::identity(), 1e-12));
  EXPECT_TRUE(is_symplectic(j4(), 1e-12));
  EXPECT_FALSE(is_symplectic(ComplexMat4::scalar(2.0), 1e-8));
  ComplexMat4 complex_id = ComplexMat4::identity();
  complex_id(0, 0) = Complex{1.0, 1e-3};
  EXPECT_FALSE(is_symplectic(complex_id, 1e-8));
  EXPECT_THROW(is_symplectic(j4(), 0.0), PreconditionError);
  EXPECT_DOUBLE_EQ(symplectic_defect(ComplexMat4::scalar(2.0)), 3.0);
}

TEST(MatrixCore, DeterminantMatchesCofactorExpansion) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const ComplexMat4 a = testing::random_complex(rng);
    EXPECT_LT(rel_diff(det(a), cofactor_det(a)), 1e-12);
  }
}

TEST(MatrixCore, ExteriorPowerExamples) {
  std::mt19937_64 rng(3);
  const ComplexMat4 a = testing::random_complex(rng);
  const ComplexMat4 b = testing::random_complex(rng);
  EXPECT_EQ(exterior_power(0, 0, a, b), Complex(1.0));
  EXPECT_LT(rel_diff(exterior_power(1, a), a.trace()), 1e-13);
  EXPECT_LT(rel_diff(exterior_power(4, a), cofactor_det(a)), 1e-12);
  const Complex alpha{0.7, -1.3};
  EXPECT_LT(rel_diff(exterior_power(2, ComplexMat4::scalar(alpha)), 6.0 * alpha * alpha), 1e-14);
  // One column through b, one through the identity-as-A1, two untouched.
  EXPECT_LT(rel_diff(exterior_power(1, 1, ComplexMat4::identity(), b), 3.0 * b.trace()), 1e-13);
}

TEST(MatrixCore, ExteriorPowerBinomialIdentity) {
  std::mt19937_64 rng(5);
  const ComplexMat4 a = testing::random_complex(rng);
  const double binom[5][5] = {{1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0},
                              {1, 4, 6, 4, 1}};
  for (int k1 = 0; k1 <= 4; ++k1)
    for (int k2 = 0; k1 + k2 <= 4; ++k2) {
      const Complex lhs = exterior_power(k1, k2, a, a);
      const Complex rhs = binom[k1 + k2][k1] * exterior_power(k1 + k2, a);
      EXPECT_LT(rel_diff(lhs, rhs), 1e-12) << k1 << "," << k2;
    }
}

TEST(MatrixCore, ExteriorPowerRejectsOutOfRangeOrders) {
  const ComplexMat4 a = ComplexMat4::identity();
  EXPECT_THROW(exterior_power(-1, 0, a, a), PreconditionError);
  EXPECT_THROW(exterior_power(3, 2, a, a), PreconditionError);
  EXPECT_THROW(exterior_power(5, a), PreconditionError);
}

TEST(MatrixCore, CharpolyAtDoubleImaginaryPair) {
  const QuarticPoly p = charpoly_three_term(j4(), j4(), I);
  EXPECT_LT(std::abs(p.coeffs[0]), 1e-14);
  EXPECT_LT(std::abs(p.coeffs[1]), 1e-14);
  EXPECT_LT(std::abs(p.coeffs[2] - Complex(-4.0)), 1e-14);
  EXPECT_LT(std::abs(p.coeffs[3] - 4.0 * I), 1e-14);
  EXPECT_EQ(p.coeffs[4], Complex(1.0));
}

TEST(MatrixCore, CharpolyOfZeroIsLambdaToTheFourth) {
  const QuarticPoly p = charpoly_three_term(ComplexMat4::zero(), ComplexMat4::zero(), 0.0);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(p.coeffs[static_cast<std::size_t>(k)], Complex(0.0));
  EXPECT_EQ(p.coeffs[4], Complex(1.0));
}

TEST(MatrixCore, CharpolyMatchesCofactorDeterminantAtSamplePoints) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 10; ++k) {
    const ComplexMat4 g = testing::random_complex(rng);
    const Complex center{0.3, -0.4};
    const QuarticPoly p = charpoly_three_term(g, g, center);
    for (const Complex lambda : {Complex(0.0), Complex(1.0, 2.0), Complex(-2.0, 0.5), Complex(0.1, 0.1),
                                 Complex(3.0, -1.0)}) {
      const Complex direct = cofactor_det(ComplexMat4::scalar(lambda) - g);
      EXPECT_LT(std::abs(p(lambda) - direct), 1e-11 * (1.0 + std::abs(direct)));
    }
  }
}

TEST(MatrixCore, CharpolyIsCenterIndependent) {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 20; ++k) {
    const ComplexMat4 g0 = testing::random_complex(rng);
    const ComplexMat4 gt = g0 + 0.1 * testing::random_complex(rng);
    const QuarticPoly a = charpoly_three_term(g0, gt, {0.5, 0.5});
    const QuarticPoly b = charpoly_three_term(g0, gt, {-1.0, 0.25});
    const QuarticPoly moved = a.recentered(b.center);
    for (std::size_t j = 0; j < 5; ++j)
      EXPECT_LT(std::abs(moved.coeffs[j] - b.coeffs[j]), 1e-12 * b.norm());
  }
}

TEST(MatrixCore, QuarticRootsExamples) {
  QuarticPoly p;
  p.coeffs = {-1.0, 0.0, 0.0, 0.0, 1.0};
  const auto r = quartic_roots(p);
  EXPECT_LT(testing::set_distance(r, {1.0, -1.0, I, -I}), 1e-14);

  QuarticPoly q;  // (lambda - 2)^4 about 0
  q.coeffs = {16.0, -32.0, 24.0, -8.0, 1.0};
  for (const Complex& z : quartic_roots(q)) EXPECT_LT(std::abs(z - 2.0), 1e-3);

  QuarticPoly centered;  // z^4 about 2
  centered.coeffs = {0.0, 0.0, 0.0, 0.0, 1.0};
  centered.center = 2.0;
  for (const Complex& z : quartic_roots(centered)) EXPECT_EQ(z, Complex(2.0));
  for (const Complex& z : quartic_root_offsets(centered)) EXPECT_EQ(z, Complex(0.0));
}

TEST(MatrixCore, QuarticRootsRejectZeroLeadingCoefficient) {
  QuarticPoly p;
  p.coeffs = {1.0, 2.0, 3.0, 4.0, 0.0};
  EXPECT_THROW(quartic_roots(p), DegeneratePolynomialError);
}

TEST(MatrixCore, QuarticRootsReconstructRandomPolynomials) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n;
  for (int k = 0; k < 100; ++k) {
    QuarticPoly p;
    for (std::size_t j = 0; j < 4; ++j) p.coeffs[j] = {n(rng), n(rng)};
    p.coeffs[4] = 1.0;
    const auto r = quartic_roots(p);
    for (const Complex& z : r) EXPECT_LE(std::abs(p(z)), 1e-12 * (1.0 + p.norm()));

    // Expand prod (lambda - r_i) and compare coefficients.
    std::array<Complex, 5> c{1.0, 0.0, 0.0, 0.0, 0.0};  // descending powers
    int deg = 0;
    for (const Complex& z : r) {
      for (int j = deg + 1; j >= 1; --j) c[static_cast<std::size_t>(j)] -= z * c[static_cast<std::size_t>(j - 1)];
      ++deg;
    }
    for (std::size_t j = 0; j < 5; ++j)
      EXPECT_LT(std::abs(c[j] - p.coeffs[4 - j]), 1e-9 * (1.0 + std::abs(p.coeffs[4 - j])));

    // Oracle: companion-matrix eigenvalues from an independent solver.
    ComplexMat4 companion;
    for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < 4; ++i) companion(i, 3) = -p.coeffs[static_cast<std::size_t>(i)];
    EXPECT_LT(testing::set_distance(r, testing::reference_eigenvalues(companion)), 1e-9);
  }
}

}  // namespace
}  // namespace krein
