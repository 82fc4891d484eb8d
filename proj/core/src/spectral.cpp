#include "krein/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "krein/error.hpp"
#include "krein/svd.hpp"

namespace krein {
namespace {

std::string fmt(double x) { return std::to_string(x); }

// First index whose modulus is within a relative 1e-12 of the maximum, so
// that exact ties in exact arithmetic resolve the same way after rounding.
int gauge_index(const ComplexVec4& v) {
  const double top = v.max_abs();
  for (int i = 0; i < kDim; ++i)
    if (std::abs(v[i]) >= top * (1.0 - 1e-12)) return i;
  return 0;
}

}  // namespace

std::array<Complex, 4> eigenvalues(const ComplexMat4& m) {
  return quartic_roots(charpoly_three_term(m, m, Complex{}));
}

std::array<Complex, 4> eigenvalue_offsets(const ComplexMat4& base, const ComplexMat4& gammat,
                                          Complex center) {
  return quartic_root_offsets(charpoly_three_term(base, gammat, center));
}

std::optional<Complex> detect_double_unitary(const ComplexMat4& m, double tol_cluster,
                                             double tol_circle) {
  if (!is_symplectic(m, 1e-8))
    throw PreconditionError("detect_double_unitary: matrix is not symplectic (defect " +
                            fmt(symplectic_defect(m)) + ")");

  auto roots = eigenvalues(m);
  std::sort(roots.begin(), roots.end(),
            [](Complex a, Complex b) { return a.imag() > b.imag(); });
  const Complex up_a = roots[0], up_b = roots[1];
  const Complex lo_a = roots[2], lo_b = roots[3];
  if (std::abs(up_a - up_b) > tol_cluster || std::abs(lo_a - lo_b) > tol_cluster)
    return std::nullopt;

  const Complex up = 0.5 * (up_a + up_b);
  const Complex lo = 0.5 * (lo_a + lo_b);
  if (std::abs(up - std::conj(lo)) > tol_cluster) return std::nullopt;

  Complex lambda0 = 0.5 * (up + std::conj(lo));
  // The cluster mean is only good to ~1e-9 because each polished root of a
  // near-double pair carries sqrt(eps) noise. The double root is a simple
  // root of p', which Newton resolves to full precision: about the current
  // center, p'(z) ~ c1 + 2 c2 z.
  for (int it = 0; it < 4; ++it) {
    const QuarticPoly p = charpoly_three_term(m, m, lambda0);
    if (p.coeffs[2] == Complex{}) break;
    const Complex step = -p.coeffs[1] / (2.0 * p.coeffs[2]);
    lambda0 += step;
    if (std::abs(step) <= 1e-17) break;
  }
  if (!(lambda0.imag() > 0.0)) return std::nullopt;
  if (std::abs(std::abs(lambda0) - 1.0) > tol_circle) return std::nullopt;
  if (std::abs(lambda0 - 1.0) <= 10.0 * tol_cluster ||
      std::abs(lambda0 + 1.0) <= 10.0 * tol_cluster)
    return std::nullopt;
  return lambda0;
}

ComplexMat4 make_jordan_symplectic(double theta0, const RealMat2& c) {
  if (std::abs(std::sin(theta0)) < 1e-12)
    throw DegenerateAngleError("make_jordan_symplectic: theta0 is a multiple of pi");
  if (c[0][1] != c[1][0])
    throw PreconditionError("make_jordan_symplectic: C must be symmetric");

  const double co = std::cos(theta0), si = std::sin(theta0);
  const double r[2][2] = {{co, -si}, {si, co}};
  ComplexMat4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m(i, j) = r[i][j];
      m(i + 2, j + 2) = r[i][j];
      double rc = 0.0;
      for (int k = 0; k < 2; ++k)
        rc += r[i][k] * c[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      m(i, j + 2) = rc;
    }
  return m;
}

JordanPair JordanPair::from_vectors(Complex lambda0, const ComplexVec4& eta1,
                                    const ComplexVec4& eta2) {
  JordanPair p;
  p.lambda0 = lambda0;
  p.eta1 = eta1;
  p.eta2 = eta2;
  p.form_21 = symplectic_form(eta2, eta1);
  p.form_12 = symplectic_form(eta1, eta2);
  p.form_22 = symplectic_form(eta2, eta2);
  const ComplexVec4 c1 = eta1.conj(), c2 = eta2.conj();
  p.diagnostics.orthogonality_pairings = {symplectic_form(eta1, eta1), symplectic_form(eta1, c1),
                                  symplectic_form(eta1, c2),   symplectic_form(eta2, c1),
                                  symplectic_form(eta2, c2),   symplectic_form(c1, c1)};
  return p;
}

JordanPair JordanPair::regauged(Complex c, Complex d) const {
  if (c == Complex{}) throw PreconditionError("JordanPair::regauged: c must be nonzero");
  JordanPair p = from_vectors(lambda0, c * eta1, c * eta2 + d * eta1);
  p.diagnostics.singular_values = diagnostics.singular_values;
  return p;
}

JordanPair JordanPair::conjugated() const {
  JordanPair p = from_vectors(std::conj(lambda0), eta1.conj(), eta2.conj());
  p.diagnostics.singular_values = diagnostics.singular_values;
  return p;
}

JordanPair jordan_pair(const ComplexMat4& m, Complex lambda0, const JordanOptions& options) {
  const ComplexMat4 k = ComplexMat4::scalar(lambda0) - m;
  const Svd4 dec = svd(k);
  const double smax = dec.sigma[0];
  const double zero = options.rank_tol * std::max(smax, 1e-300);

  if (dec.sigma[3] > zero)
    throw PreconditionError("jordan_pair: lambda0 is not an eigenvalue (smallest singular value " +
                            fmt(dec.sigma[3] / std::max(smax, 1e-300)) + " relative)");
  if (dec.sigma[2] <= zero)
    throw NotJordanBlockError("jordan_pair: geometric multiplicity of lambda0 exceeds one");

  ComplexVec4 eta1 = dec.v.column(3);

  // Minimum-norm solution of K w = -lambda0 eta1 on the range of K; it is
  // orthogonal to null(K) by construction.
  const ComplexVec4 rhs = -lambda0 * eta1;
  ComplexVec4 eta2;
  for (int j = 0; j < 3; ++j) {
    const Complex coef = inner(rhs, dec.u.column(j)) / dec.sigma[static_cast<std::size_t>(j)];
    eta2 += coef * dec.v.column(j);
  }

  const Complex scale = 1.0 / eta1[gauge_index(eta1)];
  eta1 *= scale;
  eta2 *= scale;
  eta2 -= (inner(eta2, eta1) / inner(eta1, eta1)) * eta1;

  JordanPair pair = JordanPair::from_vectors(lambda0, eta1, eta2);
  pair.diagnostics.singular_values = dec.sigma;
  pair.diagnostics.chain_residual = (k * eta2 + lambda0 * eta1).norm();
  pair.diagnostics.eigen_residual = (m * eta1 - lambda0 * eta1).norm();

  const double vec_scale = std::max(1.0, eta2.norm());
  const double tol = options.invariant_tol * vec_scale;
  if (pair.diagnostics.chain_residual > tol || pair.diagnostics.eigen_residual > tol)
    throw InconsistentChainError("jordan_pair: chain residual " +
                                 fmt(pair.diagnostics.chain_residual) + " exceeds tolerance");

  if (std::abs(pair.form_21) < options.min_pairing)
    throw DegeneratePairingError("jordan_pair: <eta2, J eta1> vanishes (" +
                                 fmt(std::abs(pair.form_21)) + ")");

  const double form_tol = options.invariant_tol * vec_scale * vec_scale;
  for (const Complex& v : pair.diagnostics.orthogonality_pairings)
    if (std::abs(v) > form_tol)
      throw InconsistentChainError("jordan_pair: orthogonality relation violated (" +
                                   fmt(std::abs(v)) + ")");
  if (std::abs(pair.form_21.imag()) > form_tol || std::abs(pair.form_12.imag()) > form_tol ||
      std::abs(pair.form_12 + pair.form_21) > form_tol ||
      std::abs(pair.form_22.real()) > form_tol)
    throw InconsistentChainError("jordan_pair: Krein form values lack the expected reality");
  return pair;
}

}  // namespace krein
