#include "krein/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace krein {
namespace {

constexpr int kMaxSweeps = 60;
constexpr double kOrthogonality = 1e-15;

}  // namespace

Svd4 svd(const ComplexMat4& m) {
  // Orthogonalize the columns of A = M V by plane rotations applied on the
  // right; at convergence the column norms are the singular values.
  std::array<ComplexVec4, kDim> a;
  std::array<ComplexVec4, kDim> v;
  for (int j = 0; j < kDim; ++j) {
    a[static_cast<std::size_t>(j)] = m.column(j);
    v[static_cast<std::size_t>(j)] = ComplexVec4::unit(j);
  }

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < kDim; ++p)
      for (std::size_t q = p + 1; q < kDim; ++q) {
        const double alpha = std::norm(a[p][0]) + std::norm(a[p][1]) + std::norm(a[p][2]) +
                             std::norm(a[p][3]);
        const double beta = std::norm(a[q][0]) + std::norm(a[q][1]) + std::norm(a[q][2]) +
                            std::norm(a[q][3]);
        const Complex g = inner(a[q], a[p]);  // a_p^* a_q
        const double gabs = std::abs(g);
        if (gabs == 0.0 || gabs <= kOrthogonality * std::sqrt(alpha * beta)) continue;
        rotated = true;

        // Rotate the phase out of g so the remaining rotation is real.
        const Complex phase = std::conj(g) / gabs;
        a[q] *= phase;
        v[q] *= phase;

        const double zeta = (beta - alpha) / (2.0 * gabs);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        const ComplexVec4 ap = a[p];
        a[p] = c * ap - s * a[q];
        a[q] = s * ap + c * a[q];
        const ComplexVec4 vp = v[p];
        v[p] = c * vp - s * v[q];
        v[q] = s * vp + c * v[q];
      }
    if (!rotated) break;
  }

  std::array<int, kDim> order{};
  std::iota(order.begin(), order.end(), 0);
  std::array<double, kDim> norms{};
  for (std::size_t j = 0; j < kDim; ++j) norms[j] = a[j].norm();
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return norms[static_cast<std::size_t>(x)] > norms[static_cast<std::size_t>(y)];
  });

  Svd4 out;
  for (int k = 0; k < kDim; ++k) {
    const auto src = static_cast<std::size_t>(order[static_cast<std::size_t>(k)]);
    const double sigma = norms[src];
    out.sigma[static_cast<std::size_t>(k)] = sigma;
    out.v.set_column(k, v[src]);
    if (sigma > 0.0) {
      out.u.set_column(k, (1.0 / sigma) * a[src]);
    } else {
      out.u.set_column(k, ComplexVec4::unit(k));
    }
  }
  return out;
}

}  // namespace krein
