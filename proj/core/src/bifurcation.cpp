#include "krein/bifurcation.hpp"

#include <cmath>

#include "krein/error.hpp"

namespace krein {

CoefficientLadder ladder(const ComplexMat4& gamma0, const ComplexMat4& gammadot0,
                         Complex lambda0) {
  if (std::abs(std::abs(lambda0) - 1.0) > 1e-8)
    throw PreconditionError("ladder: lambda0 must have unit modulus");

  const ComplexMat4 k = ComplexMat4::scalar(lambda0) - gamma0;
  CoefficientLadder out;
  for (int j = 0; j <= 4; ++j) out.c[static_cast<std::size_t>(j)] = exterior_power(4 - j, k);
  out.c31 = exterior_power(3, 1, k, gammadot0);
  out.c21 = exterior_power(2, 1, k, gammadot0);
  if (std::abs(out.c[2]) < 1e-10)
    throw ExcludedCaseError("ladder: c2(0) vanishes; lambda0 is too close to +-1");
  out.a_squared = out.c31 / out.c[2];
  return out;
}

LadderClosedForm ladder_closed_form(const JordanPair& pair, const ComplexMat4& a0) {
  const Complex l = pair.lambda0;
  const Complex d = l - std::conj(l);
  const Complex n11 = inner(a0 * pair.eta1, pair.eta1);
  const Complex ratio = n11 / pair.form_21;
  const Complex rest = inner(a0 * pair.eta1, pair.eta2) / pair.form_12 +
                       inner(a0 * pair.eta2, pair.eta1) / pair.form_21 -
                       n11 * pair.form_22 / (pair.form_21 * pair.form_12);
  LadderClosedForm out;
  out.c31 = l * l * d * d * ratio;
  out.c21 = (2.0 * l * l * d + l * d * d) * ratio + l * d * d * rest;
  return out;
}

ExpansionCoefficients expansion_t(const JordanPair& pair, const ComplexMat4& a0,
                                  double degenerate_tol) {
  const Complex n11 = inner(a0 * pair.eta1, pair.eta1);
  if (!(std::abs(n11) > degenerate_tol))
    throw DegenerateCaseError("expansion: <A eta1, eta1> vanishes (|value| = " +
                                  std::to_string(std::abs(n11)) + ")",
                              std::abs(n11));

  const Complex l = pair.lambda0;
  const Complex ratio = n11 / pair.form_21;

  ExpansionCoefficients out;
  out.lambda0 = l;
  out.numerator = n11;
  out.kappa = ratio.real();
  out.kappa_imag = ratio.imag();
  out.a = std::sqrt(l * l * out.kappa);
  out.bracket = ratio + inner(a0 * pair.eta1, pair.eta2) / pair.form_12 +
                inner(a0 * pair.eta2, pair.eta1) / pair.form_21 -
                n11 * pair.form_22 / (pair.form_21 * pair.form_12);
  out.sum_derivative = l * out.bracket;
  out.second_order = 0.5 * out.sum_derivative;
  return out;
}

ExpansionCoefficients expansion_eps(const JordanPair& pair, const ComplexMat4& b,
                                    double degenerate_tol) {
  return expansion_t(pair, b, degenerate_tol);
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::unstable_forward_stable_backward:
      return "unstable_forward_stable_backward";
    case Stability::stable_forward_unstable_backward:
      return "stable_forward_unstable_backward";
  }
  return "unknown";
}

StabilityVerdict classify_stability(const ExpansionCoefficients& coeffs, double tol) {
  if (!(std::abs(coeffs.kappa) > tol))
    throw InconclusiveError("classify_stability: kappa vanishes; first-order analysis is "
                            "inconclusive");
  if (coeffs.kappa > 0.0) return {Stability::unstable_forward_stable_backward, coeffs.kappa, +1};
  return {Stability::stable_forward_unstable_backward, coeffs.kappa, -1};
}

std::pair<Complex, Complex> predict_branches(const ExpansionCoefficients& coeffs,
                                             Complex lambda0, double s, bool allow_negative) {
  Complex root;
  if (s >= 0.0) {
    root = coeffs.a * std::sqrt(s);
  } else {
    if (!allow_negative)
      throw PreconditionError("predict_branches: negative parameter needs allow_negative");
    root = Complex{0.0, 1.0} * coeffs.a * std::sqrt(-s);
  }
  const Complex drift = coeffs.second_order * s;
  return {lambda0 - root + drift, lambda0 + root + drift};
}

}  // namespace krein
