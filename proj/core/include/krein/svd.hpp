#pragma once

#include <array>

#include "krein/matrix_core.hpp"

namespace krein {

/// M = U diag(sigma) V^*, singular values in descending order.
struct Svd4 {
  ComplexMat4 u;
  std::array<double, 4> sigma{};
  ComplexMat4 v;
};

/// One-sided (Hestenes) Jacobi SVD of a complex 4x4 matrix.
Svd4 svd(const ComplexMat4& m);

}  // namespace krein
