#pragma once

#include <array>
#include <optional>

#include "krein/matrix_core.hpp"

namespace krein {

using RealMat2 = std::array<std::array<double, 2>, 2>;

/// Eigenvalues of M as the roots of its characteristic polynomial.
std::array<Complex, 4> eigenvalues(const ComplexMat4& m);

/// Eigenvalues of `gammat`, with the characteristic polynomial expanded about
/// `center` using `base` as the reference matrix. Returned as offsets from
/// `center`, which keeps full precision for eigenvalues close to it.
std::array<Complex, 4> eigenvalue_offsets(const ComplexMat4& base, const ComplexMat4& gammat,
                                          Complex center);

/// Finds a double eigenvalue lambda0 (Im > 0) on the unit circle, away from
/// +-1, together with its conjugate double eigenvalue. Returns nullopt when
/// the spectrum does not have that shape. Throws PreconditionError when M is
/// not symplectic to 1e-8.
std::optional<Complex> detect_double_unitary(const ComplexMat4& m, double tol_cluster,
                                             double tol_circle);

/// [[R, R C], [0, R]] with R the rotation by theta0 and C symmetric: a real
/// symplectic matrix with double eigenvalues e^{+-i theta0}, non-semisimple
/// iff trace(C) != 0. Throws DegenerateAngleError when theta0 is a multiple
/// of pi and PreconditionError when C is not symmetric.
ComplexMat4 make_jordan_symplectic(double theta0, const RealMat2& c);

struct JordanOptions {
  /// Singular values below rank_tol * sigma_max count as zero.
  double rank_tol = 1e-8;
  /// Tolerance for the chain, orthogonality pairings and reality checks.
  double invariant_tol = 1e-8;
  /// |<eta2, J eta1>| below this is a degenerate pairing.
  double min_pairing = 1e-10;
};

struct JordanDiagnostics {
  std::array<double, 4> singular_values{};
  double chain_residual = 0.0;   // ||K eta2 + lambda0 eta1||
  double eigen_residual = 0.0;   // ||M eta1 - lambda0 eta1||
  /// <e1,Je1>, <e1,J conj e1>, <e1,J conj e2>, <e2,J conj e1>, <e2,J conj e2>,
  /// <conj e1, J conj e1>; all vanish for a valid pair.
  std::array<Complex, 6> orthogonality_pairings{};
};

/// Eigenvector eta1 and generalized eigenvector eta2 of a real symplectic
/// matrix with M eta1 = lambda0 eta1 and M eta2 = lambda0 eta2 + lambda0 eta1.
struct JordanPair {
  Complex lambda0;
  ComplexVec4 eta1;
  ComplexVec4 eta2;
  Complex form_21;  // <eta2, J eta1>
  Complex form_12;  // <eta1, J eta2>
  Complex form_22;  // <eta2, J eta2>
  JordanDiagnostics diagnostics;

  /// Pair built from given vectors with forms and orthogonality pairings filled in.
  static JordanPair from_vectors(Complex lambda0, const ComplexVec4& eta1,
                                 const ComplexVec4& eta2);

  /// The equivalent chain (c eta1, c eta2 + d eta1), c != 0.
  JordanPair regauged(Complex c, Complex d) const;

  /// The chain at conj(lambda0): (conj eta1, conj eta2).
  JordanPair conjugated() const;
};

/// Extracts the normalized Jordan chain of M at lambda0. Throws
/// NotJordanBlockError (geometric multiplicity > 1), InconsistentChainError
/// (chain equation or invariants fail), DegeneratePairingError
/// (|<eta2, J eta1>| too small), PreconditionError (lambda0 not an eigenvalue).
JordanPair jordan_pair(const ComplexMat4& m, Complex lambda0, const JordanOptions& options = {});

}  // namespace krein
