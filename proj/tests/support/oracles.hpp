#pragma once

// Independent reference computations used only by the tests. Nothing here
// shares code with the library routines it checks.

#include <array>
#include <random>

#include "krein/matrix_core.hpp"
#include "krein/spectral.hpp"

namespace krein::testing {

/// Determinant by cofactor (Laplace) expansion along the first row.
Complex cofactor_det(const ComplexMat4& m);

/// Matrix exponential by scaling and squaring of a Taylor series.
ComplexMat4 expm(const ComplexMat4& m);

/// Eigenvalues from Eigen's ComplexEigenSolver.
std::array<Complex, 4> reference_eigenvalues(const ComplexMat4& m);

/// max_i min_j |a_i - b_j| with each b_j used once (greedy on a sorted copy;
/// adequate for the well-separated sets compared in the tests).
double set_distance(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b);

ComplexMat4 random_complex(std::mt19937_64& rng);
ComplexMat4 random_symmetric(std::mt19937_64& rng, double scale = 1.0);
/// exp(J4 S) for a random symmetric S of the given scale.
ComplexMat4 random_symplectic(std::mt19937_64& rng, double scale = 0.5);

/// A random real symplectic matrix with a non-semisimple double eigenvalue
/// e^{i theta0}: P G P^{-1} with G = make_jordan_symplectic(theta0, C).
struct JordanScenario {
  double theta0;
  ComplexMat4 gamma0;
};
JordanScenario random_jordan(std::mt19937_64& rng);

/// Matrix inverse by Gauss-Jordan elimination with partial pivoting.
ComplexMat4 inverse(const ComplexMat4& m);

double rel_diff(Complex a, Complex b);

}  // namespace krein::testing
