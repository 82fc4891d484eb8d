#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "krein/expr.hpp"
#include "krein/matrix_core.hpp"

namespace krein {

/// Real symmetric 4x4 matrix curve A(t, eps) given entrywise by expressions.
/// Only the upper triangle is stored, so entry(i, j) and entry(j, i) are the
/// same Expr object.
class SymmetricCurve {
 public:
  /// The zero curve.
  SymmetricCurve();

  /// Builds a curve from (row, col) -> source text. Missing entries are zero.
  /// Supplying both (i, j) and (j, i) with different expressions throws
  /// SymmetryConflictError; bad indices throw PreconditionError; expression
  /// syntax errors propagate as ParseError.
  static SymmetricCurve from_sources(const std::map<std::pair<int, int>, std::string>& entries);

  /// Upper triangle in row-major order: (0,0) (0,1) (0,2) (0,3) (1,1) ...
  explicit SymmetricCurve(std::array<Expr, 10> upper);

  const Expr& entry(int i, int j) const;
  bool has_eps() const { return has_eps_; }
  /// True when every entry is syntactically affine in eps.
  bool linear_in_eps() const { return eps_coeffs_.has_value(); }

 private:
  static std::size_t slot(int i, int j);

  std::array<Expr, 10> upper_;
  std::optional<std::array<Expr, 10>> eps_coeffs_;
  bool has_eps_ = false;

  friend ComplexMat4 d_eps_matrix(const SymmetricCurve&, double, double, double);
};

/// A(t, eps). Exactly symmetric. Domain errors surface as EntryDomainError.
ComplexMat4 eval_matrix(const SymmetricCurve& c, double t, double eps);

/// dA/deps at (t, eps): exact for curves affine in eps, otherwise a central
/// difference with step h > 0.
ComplexMat4 d_eps_matrix(const SymmetricCurve& c, double t, double eps, double h);

/// Same, with the default step 1e-6 * (1 + |eps|).
ComplexMat4 d_eps_matrix(const SymmetricCurve& c, double t, double eps);

double default_eps_step(double eps);

}  // namespace krein
