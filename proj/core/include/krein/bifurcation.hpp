#pragma once

#include <array>
#include <string>
#include <utility>

#include "krein/matrix_core.hpp"
#include "krein/spectral.hpp"

namespace krein {

/// Coefficients of det(lambda Id - gamma(t)) about lambda0 at t = 0 and the
/// first-order mixed coefficients c_{3,1}(0), c_{2,1}(0).
struct CoefficientLadder {
  std::array<Complex, 5> c{};  // c_k(0), k = 0..4
  Complex c31;
  Complex c21;
  Complex a_squared;  // c31 / c2
};

/// Exterior-power evaluation with K = lambda0 Id - gamma0 and the derivative
/// map gammadot0. Throws ExcludedCaseError when c2(0) vanishes (lambda0 near
/// +-1) and PreconditionError when lambda0 is off the unit circle.
CoefficientLadder ladder(const ComplexMat4& gamma0, const ComplexMat4& gammadot0,
                         Complex lambda0);

/// c_{3,1}(0) and c_{2,1}(0) from the inner-product closed forms.
struct LadderClosedForm {
  Complex c31;
  Complex c21;
};
LadderClosedForm ladder_closed_form(const JordanPair& pair, const ComplexMat4& a0);

struct ExpansionCoefficients {
  Complex lambda0;
  /// <A eta1, eta1>; the hypothesis requires it to be nonzero.
  Complex numerator;
  double kappa = 0.0;
  /// Imaginary residue of the kappa ratio; a diagnostic, ideally ~0.
  double kappa_imag = 0.0;
  Complex a;        // principal sqrt(lambda0^2 kappa)
  Complex bracket;  // four-term bracket
  Complex second_order;
  Complex sum_derivative;
};

/// Second-order splitting coefficients from A(0). Throws DegenerateCaseError
/// when |<A0 eta1, eta1>| <= degenerate_tol.
ExpansionCoefficients expansion_t(const JordanPair& pair, const ComplexMat4& a0,
                                  double degenerate_tol = 1e-10);

/// The same algebra with the perturbation Hamiltonian B(T, 0) in place of A(0).
ExpansionCoefficients expansion_eps(const JordanPair& pair, const ComplexMat4& b,
                                    double degenerate_tol = 1e-10);

enum class Stability { unstable_forward_stable_backward, stable_forward_unstable_backward };

std::string to_string(Stability s);

struct StabilityVerdict {
  Stability verdict;
  double kappa;
  /// +1 when instability is guaranteed for small positive parameter, -1 for
  /// small negative parameter.
  int unstable_direction;
};

/// Sign dichotomy of kappa. Throws InconclusiveError when |kappa| <= tol.
StabilityVerdict classify_stability(const ExpansionCoefficients& coeffs, double tol = 1e-10);

/// lambda_j(s) = lambda0 + (-1)^j a sqrt(s) + second_order s for j = 1, 2.
/// Negative s requires allow_negative and uses i a sqrt|s| in place of a sqrt(s);
/// otherwise it throws PreconditionError.
std::pair<Complex, Complex> predict_branches(const ExpansionCoefficients& coeffs,
                                             Complex lambda0, double s,
                                             bool allow_negative = false);

}  // namespace krein
