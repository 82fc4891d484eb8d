#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace krein::testing {
namespace {

Complex minor_det(const ComplexMat4& m, std::vector<int> rows, std::vector<int> cols) {
  if (rows.size() == 1) return m(rows[0], cols[0]);
  Complex sum{};
  const int r = rows[0];
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::vector<int> sub_cols = cols;
    sub_cols.erase(sub_cols.begin() + static_cast<std::ptrdiff_t>(k));
    const Complex term = m(r, cols[k]) * minor_det(m, sub_rows, sub_cols);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace

Complex cofactor_det(const ComplexMat4& m) { return minor_det(m, {0, 1, 2, 3}, {0, 1, 2, 3}); }

ComplexMat4 expm(const ComplexMat4& m) {
  int squarings = 0;
  double norm = m.max_abs() * 4.0;
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  const ComplexMat4 a = std::ldexp(1.0, -squarings) * m;
  ComplexMat4 term = ComplexMat4::identity();
  ComplexMat4 sum = ComplexMat4::identity();
  for (int k = 1; k <= 20; ++k) {
    term = (1.0 / k) * (term * a);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

std::array<Complex, 4> reference_eigenvalues(const ComplexMat4& m) {
  Eigen::Matrix4cd e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e(i, j) = m(i, j);
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(e, false);
  std::array<Complex, 4> out{};
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

double set_distance(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b) {
  std::vector<Complex> pool(b.begin(), b.end());
  double worst = 0.0;
  for (const Complex& x : a) {
    auto best = std::min_element(pool.begin(), pool.end(), [&](Complex p, Complex q) {
      return std::abs(p - x) < std::abs(q - x);
    });
    worst = std::max(worst, std::abs(*best - x));
    pool.erase(best);
  }
  return worst;
}

ComplexMat4 random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  ComplexMat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Complex{n(rng), n(rng)};
  return m;
}

ComplexMat4 random_symmetric(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, scale);
  ComplexMat4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      const double v = n(rng);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

ComplexMat4 random_symplectic(std::mt19937_64& rng, double scale) {
  return expm(j4() * random_symmetric(rng, scale));
}

JordanScenario random_jordan(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.3, std::numbers::pi - 0.3);
  std::normal_distribution<double> n;
  JordanScenario out;
  out.theta0 = angle(rng);
  RealMat2 c{};
  do {
    c = {{{n(rng), 0.0}, {0.0, n(rng)}}};
    c[0][1] = c[1][0] = n(rng);
  } while (std::abs(c[0][0] + c[1][1]) < 0.3);
  const ComplexMat4 p = random_symplectic(rng, 0.3);
  out.gamma0 = p * make_jordan_symplectic(out.theta0, c) * inverse(p);
  return out;
}

ComplexMat4 inverse(const ComplexMat4& m) {
  ComplexMat4 a = m, inv = ComplexMat4::identity();
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    for (int j = 0; j < 4; ++j) {
      std::swap(a(col, j), a(piv, j));
      std::swap(inv(col, j), inv(piv, j));
    }
    const Complex d = a(col, col);
    for (int j = 0; j < 4; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      for (int j = 0; j < 4; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

double rel_diff(Complex a, Complex b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace krein::testing
