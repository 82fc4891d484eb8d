#pragma once

// Fixed-size complex linear algebra in dimension four: vectors, matrices,
// the standard symplectic form, exterior powers of linear maps, and
// characteristic polynomials expanded about an arbitrary center.

#include <array>
#include <complex>
#include <cstddef>

namespace krein {

using Complex = std::complex<double>;

inline constexpr int kDim = 4;

class ComplexVec4 {
 public:
  constexpr ComplexVec4() = default;
  constexpr ComplexVec4(Complex a, Complex b, Complex c, Complex d) : v_{a, b, c, d} {}

  static ComplexVec4 unit(int i);

  Complex& operator[](int i) { return v_[static_cast<std::size_t>(i)]; }
  const Complex& operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

  ComplexVec4& operator+=(const ComplexVec4& o);
  ComplexVec4& operator-=(const ComplexVec4& o);
  ComplexVec4& operator*=(Complex s);

  ComplexVec4 conj() const;
  double norm() const;
  double max_abs() const;
  bool is_finite() const;

 private:
  std::array<Complex, kDim> v_{};
};

ComplexVec4 operator+(ComplexVec4 a, const ComplexVec4& b);
ComplexVec4 operator-(ComplexVec4 a, const ComplexVec4& b);
ComplexVec4 operator-(const ComplexVec4& a);
ComplexVec4 operator*(Complex s, ComplexVec4 a);
ComplexVec4 operator*(ComplexVec4 a, Complex s);

/// Row-major 4x4 complex matrix.
class ComplexMat4 {
 public:
  constexpr ComplexMat4() = default;

  static ComplexMat4 identity();
  static ComplexMat4 zero() { return {}; }
  static ComplexMat4 scalar(Complex s);
  static ComplexMat4 from_columns(const std::array<ComplexVec4, kDim>& cols);

  Complex& operator()(int i, int j) { return m_[idx(i, j)]; }
  const Complex& operator()(int i, int j) const { return m_[idx(i, j)]; }

  ComplexVec4 column(int j) const;
  void set_column(int j, const ComplexVec4& v);

  ComplexMat4& operator+=(const ComplexMat4& o);
  ComplexMat4& operator-=(const ComplexMat4& o);
  ComplexMat4& operator*=(Complex s);

  ComplexMat4 transpose() const;
  ComplexMat4 adjoint() const;
  ComplexMat4 conj() const;
  Complex trace() const;

  /// Largest entry modulus.
  double max_abs() const;
  /// Largest imaginary-part magnitude over all entries.
  double max_imag() const;
  bool is_finite() const;

 private:
  static constexpr std::size_t idx(int i, int j) {
    return static_cast<std::size_t>(i * kDim + j);
  }
  std::array<Complex, kDim * kDim> m_{};
};

ComplexMat4 operator+(ComplexMat4 a, const ComplexMat4& b);
ComplexMat4 operator-(ComplexMat4 a, const ComplexMat4& b);
ComplexMat4 operator-(const ComplexMat4& a);
ComplexMat4 operator*(Complex s, ComplexMat4 a);
ComplexMat4 operator*(ComplexMat4 a, Complex s);
ComplexMat4 operator*(const ComplexMat4& a, const ComplexMat4& b);
ComplexVec4 operator*(const ComplexMat4& a, const ComplexVec4& x);

/// The standard symplectic matrix J4 = [[0, Id2], [-Id2, 0]].
const ComplexMat4& j4();

/// Quartic polynomial sum_k coeffs[k] * (lambda - center)^k.
struct QuarticPoly {
  std::array<Complex, 5> coeffs{};
  Complex center{};

  /// Evaluates at an absolute point lambda.
  Complex operator()(Complex lambda) const;
  Complex derivative(Complex lambda) const;
  /// Sum of coefficient moduli; the scale used by root residual checks.
  double norm() const;
  /// The same polynomial re-expanded about another center.
  QuarticPoly recentered(Complex new_center) const;
};

/// <x, y> = sum_j x_j conj(y_j); conjugate-linear in the second slot.
Complex inner(const ComplexVec4& x, const ComplexVec4& y);

/// <x, J4 y>.
Complex symplectic_form(const ComplexVec4& x, const ComplexVec4& y);

/// True when M^T J4 M = J4 entrywise within `tol` and M is real within `tol`.
/// Throws PreconditionError unless tol > 0.
bool is_symplectic(const ComplexMat4& m, double tol);

/// max |(M^T J4 M - J4)_ij|.
double symplectic_defect(const ComplexMat4& m);

/// Determinant by Gaussian elimination with partial pivoting.
Complex det(const ComplexMat4& m);

/// Scaling factor of the exterior power map on the top exterior power of C^4:
/// the sum, over all ways of applying A1 to exactly k1 basis vectors, A2 to
/// exactly k2 others and the identity to the rest, of the resulting
/// determinants. Requires k1, k2 >= 0 and k1 + k2 <= 4.
Complex exterior_power(int k1, int k2, const ComplexMat4& a1, const ComplexMat4& a2);

/// Single-map form: exterior_power(k, 0, a, anything).
Complex exterior_power(int k, const ComplexMat4& a);

/// det(lambda Id - gammat) expanded in powers of (lambda - lambda0), using
/// (lambda0 Id - gamma0) and (gammat - gamma0) as the two maps. Monic.
QuarticPoly charpoly_three_term(const ComplexMat4& gamma0, const ComplexMat4& gammat,
                                Complex lambda0);

/// All four roots of `p` in absolute coordinates, Newton-polished.
/// Throws DegeneratePolynomialError when the leading coefficient is zero.
std::array<Complex, 4> quartic_roots(const QuarticPoly& p);

/// Roots of `p` as offsets lambda - p.center. Same algorithm as quartic_roots,
/// without the final shift, so roots near the center keep full precision.
std::array<Complex, 4> quartic_root_offsets(const QuarticPoly& p);

}  // namespace krein
