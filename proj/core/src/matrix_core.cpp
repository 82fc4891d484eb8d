#include "krein/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "krein/error.hpp"

namespace krein {

// ---------------------------------------------------------------------------
// ComplexVec4

ComplexVec4 ComplexVec4::unit(int i) {
  ComplexVec4 e;
  e[i] = 1.0;
  return e;
}

ComplexVec4& ComplexVec4::operator+=(const ComplexVec4& o) {
  for (int i = 0; i < kDim; ++i) (*this)[i] += o[i];
  return *this;
}

ComplexVec4& ComplexVec4::operator-=(const ComplexVec4& o) {
  for (int i = 0; i < kDim; ++i) (*this)[i] -= o[i];
  return *this;
}

ComplexVec4& ComplexVec4::operator*=(Complex s) {
  for (auto& x : v_) x *= s;
  return *this;
}

ComplexVec4 ComplexVec4::conj() const {
  ComplexVec4 r;
  for (int i = 0; i < kDim; ++i) r[i] = std::conj((*this)[i]);
  return r;
}

double ComplexVec4::norm() const {
  double s = 0.0;
  for (const auto& x : v_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexVec4::max_abs() const {
  double m = 0.0;
  for (const auto& x : v_) m = std::max(m, std::abs(x));
  return m;
}

bool ComplexVec4::is_finite() const {
  return std::all_of(v_.begin(), v_.end(), [](const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

ComplexVec4 operator+(ComplexVec4 a, const ComplexVec4& b) { return a += b; }
ComplexVec4 operator-(ComplexVec4 a, const ComplexVec4& b) { return a -= b; }
ComplexVec4 operator-(const ComplexVec4& a) { return Complex(-1.0) * a; }
ComplexVec4 operator*(Complex s, ComplexVec4 a) { return a *= s; }
ComplexVec4 operator*(ComplexVec4 a, Complex s) { return a *= s; }

// ---------------------------------------------------------------------------
// ComplexMat4

ComplexMat4 ComplexMat4::identity() { return scalar(1.0); }

ComplexMat4 ComplexMat4::scalar(Complex s) {
  ComplexMat4 m;
  for (int i = 0; i < kDim; ++i) m(i, i) = s;
  return m;
}

ComplexMat4 ComplexMat4::from_columns(const std::array<ComplexVec4, kDim>& cols) {
  ComplexMat4 m;
  for (int j = 0; j < kDim; ++j) m.set_column(j, cols[static_cast<std::size_t>(j)]);
  return m;
}

ComplexVec4 ComplexMat4::column(int j) const {
  return {(*this)(0, j), (*this)(1, j), (*this)(2, j), (*this)(3, j)};
}

void ComplexMat4::set_column(int j, const ComplexVec4& v) {
  for (int i = 0; i < kDim; ++i) (*this)(i, j) = v[i];
}

ComplexMat4& ComplexMat4::operator+=(const ComplexMat4& o) {
  for (std::size_t k = 0; k < m_.size(); ++k) m_[k] += o.m_[k];
  return *this;
}

ComplexMat4& ComplexMat4::operator-=(const ComplexMat4& o) {
  for (std::size_t k = 0; k < m_.size(); ++k) m_[k] -= o.m_[k];
  return *this;
}

ComplexMat4& ComplexMat4::operator*=(Complex s) {
  for (auto& x : m_) x *= s;
  return *this;
}

ComplexMat4 ComplexMat4::transpose() const {
  ComplexMat4 r;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMat4 ComplexMat4::adjoint() const { return transpose().conj(); }

ComplexMat4 ComplexMat4::conj() const {
  ComplexMat4 r;
  for (std::size_t k = 0; k < m_.size(); ++k) r.m_[k] = std::conj(m_[k]);
  return r;
}

Complex ComplexMat4::trace() const {
  Complex s = 0.0;
  for (int i = 0; i < kDim; ++i) s += (*this)(i, i);
  return s;
}

double ComplexMat4::max_abs() const {
  double m = 0.0;
  for (const auto& x : m_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMat4::max_imag() const {
  double m = 0.0;
  for (const auto& x : m_) m = std::max(m, std::abs(x.imag()));
  return m;
}

bool ComplexMat4::is_finite() const {
  return std::all_of(m_.begin(), m_.end(), [](const Complex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

ComplexMat4 operator+(ComplexMat4 a, const ComplexMat4& b) { return a += b; }
ComplexMat4 operator-(ComplexMat4 a, const ComplexMat4& b) { return a -= b; }
ComplexMat4 operator-(const ComplexMat4& a) { return Complex(-1.0) * a; }
ComplexMat4 operator*(Complex s, ComplexMat4 a) { return a *= s; }
ComplexMat4 operator*(ComplexMat4 a, Complex s) { return a *= s; }

ComplexMat4 operator*(const ComplexMat4& a, const ComplexMat4& b) {
  ComplexMat4 r;
  for (int i = 0; i < kDim; ++i)
    for (int k = 0; k < kDim; ++k) {
      const Complex aik = a(i, k);
      for (int j = 0; j < kDim; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

ComplexVec4 operator*(const ComplexMat4& a, const ComplexVec4& x) {
  ComplexVec4 r;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r[i] += a(i, j) * x[j];
  return r;
}

const ComplexMat4& j4() {
  static const ComplexMat4 j = [] {
    ComplexMat4 m;
    m(0, 2) = 1.0;
    m(1, 3) = 1.0;
    m(2, 0) = -1.0;
    m(3, 1) = -1.0;
    return m;
  }();
  return j;
}

// ---------------------------------------------------------------------------
// QuarticPoly

Complex QuarticPoly::operator()(Complex lambda) const {
  const Complex z = lambda - center;
  Complex acc = coeffs[4];
  for (int k = 3; k >= 0; --k) acc = acc * z + coeffs[static_cast<std::size_t>(k)];
  return acc;
}

Complex QuarticPoly::derivative(Complex lambda) const {
  const Complex z = lambda - center;
  Complex acc = 4.0 * coeffs[4];
  for (int k = 3; k >= 1; --k)
    acc = acc * z + static_cast<double>(k) * coeffs[static_cast<std::size_t>(k)];
  return acc;
}

double QuarticPoly::norm() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::abs(c);
  return s;
}

QuarticPoly QuarticPoly::recentered(Complex new_center) const {
  // Taylor shift by repeated synthetic division.
  QuarticPoly r{coeffs, new_center};
  const Complex delta = new_center - center;
  for (int i = 0; i < 4; ++i)
    for (int j = 3; j >= i; --j)
      r.coeffs[static_cast<std::size_t>(j)] += delta * r.coeffs[static_cast<std::size_t>(j + 1)];
  return r;
}

// ---------------------------------------------------------------------------
// Forms

Complex inner(const ComplexVec4& x, const ComplexVec4& y) {
  Complex s = 0.0;
  for (int j = 0; j < kDim; ++j) s += x[j] * std::conj(y[j]);
  return s;
}

Complex symplectic_form(const ComplexVec4& x, const ComplexVec4& y) {
  // J4 y = (y2, y3, -y0, -y1)
  const ComplexVec4 jy{y[2], y[3], -y[0], -y[1]};
  return inner(x, jy);
}

double symplectic_defect(const ComplexMat4& m) {
  return (m.transpose() * j4() * m - j4()).max_abs();
}

bool is_symplectic(const ComplexMat4& m, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("is_symplectic: tolerance must be positive");
  return symplectic_defect(m) <= tol && m.max_imag() <= tol;
}

// ---------------------------------------------------------------------------
// Determinants and exterior powers

Complex det(const ComplexMat4& m) {
  ComplexMat4 a = m;
  Complex d = 1.0;
  for (int col = 0; col < kDim; ++col) {
    int pivot = col;
    for (int r = col + 1; r < kDim; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == Complex(0.0)) return 0.0;
    if (pivot != col) {
      for (int j = 0; j < kDim; ++j) std::swap(a(pivot, j), a(col, j));
      d = -d;
    }
    const Complex p = a(col, col);
    d *= p;
    for (int r = col + 1; r < kDim; ++r) {
      const Complex f = a(r, col) / p;
      if (f == Complex(0.0)) continue;
      for (int j = col + 1; j < kDim; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return d;
}

namespace {

constexpr int kAssignments = 81;  // 3^4

struct Assignment {
  std::array<int, kDim> choice{};  // 0 = identity, 1 = first map, 2 = second map
  int ones = 0;
  int twos = 0;
};

const std::array<Assignment, kAssignments>& assignments() {
  static const std::array<Assignment, kAssignments> table = [] {
    std::array<Assignment, kAssignments> t{};
    for (int code = 0; code < kAssignments; ++code) {
      Assignment& a = t[static_cast<std::size_t>(code)];
      int c = code;
      for (int i = 0; i < kDim; ++i) {
        a.choice[static_cast<std::size_t>(i)] = c % 3;
        c /= 3;
        if (a.choice[static_cast<std::size_t>(i)] == 1) ++a.ones;
        if (a.choice[static_cast<std::size_t>(i)] == 2) ++a.twos;
      }
    }
    return t;
  }();
  return table;
}

Complex assignment_det(const Assignment& a, const ComplexMat4& a1, const ComplexMat4& a2) {
  ComplexMat4 cols;
  for (int i = 0; i < kDim; ++i) {
    switch (a.choice[static_cast<std::size_t>(i)]) {
      case 0:
        cols(i, i) = 1.0;
        break;
      case 1:
        cols.set_column(i, a1.column(i));
        break;
      default:
        cols.set_column(i, a2.column(i));
        break;
    }
  }
  return det(cols);
}

}  // namespace

Complex exterior_power(int k1, int k2, const ComplexMat4& a1, const ComplexMat4& a2) {
  if (k1 < 0 || k2 < 0 || k1 + k2 > kDim)
    throw PreconditionError("exterior_power: need k1, k2 >= 0 and k1 + k2 <= 4, got (" +
                            std::to_string(k1) + ", " + std::to_string(k2) + ")");
  Complex sum = 0.0;
  for (const auto& a : assignments())
    if (a.ones == k1 && a.twos == k2) sum += assignment_det(a, a1, a2);
  return sum;
}

Complex exterior_power(int k, const ComplexMat4& a) { return exterior_power(k, 0, a, a); }

QuarticPoly charpoly_three_term(const ComplexMat4& gamma0, const ComplexMat4& gammat,
                                Complex lambda0) {
  const ComplexMat4 k = ComplexMat4::scalar(lambda0) - gamma0;
  const ComplexMat4 d = gammat - gamma0;

  // Each assignment contributes to exactly one coefficient, c_{4 - k1 - k2},
  // with sign (-1)^k2; this is the same sum as calling exterior_power for
  // every (k1, k2) pair.
  QuarticPoly p;
  p.center = lambda0;
  for (const auto& a : assignments()) {
    const Complex term = assignment_det(a, k, d);
    const auto slot = static_cast<std::size_t>(kDim - a.ones - a.twos);
    p.coeffs[slot] += (a.twos % 2 == 0) ? term : -term;
  }
  return p;
}

}  // namespace krein
