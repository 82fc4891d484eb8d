#include <cmath>
#include <string>

#include "krein/curve.hpp"
#include "krein/error.hpp"

namespace krein {

std::size_t SymmetricCurve::slot(int i, int j) {
  if (i > j) std::swap(i, j);
  // Offsets of the first upper-triangle entry of each row: 0, 4, 7, 9.
  static constexpr int row_start[kDim] = {0, 4, 7, 9};
  return static_cast<std::size_t>(row_start[i] + (j - i));
}

SymmetricCurve::SymmetricCurve() : SymmetricCurve(std::array<Expr, 10>{}) {}

SymmetricCurve::SymmetricCurve(std::array<Expr, 10> upper) : upper_(std::move(upper)) {
  std::array<Expr, 10> coeffs;
  bool linear = true;
  for (std::size_t k = 0; k < upper_.size(); ++k) {
    has_eps_ = has_eps_ || upper_[k].depends_on_eps();
    if (auto d = eps_coefficient(upper_[k])) {
      coeffs[k] = *d;
    } else {
      linear = false;
    }
  }
  if (linear) eps_coeffs_ = std::move(coeffs);
}

SymmetricCurve SymmetricCurve::from_sources(
    const std::map<std::pair<int, int>, std::string>& entries) {
  std::array<std::optional<Expr>, 10> upper;
  std::array<std::pair<int, int>, 10> origin{};
  for (const auto& [key, text] : entries) {
    const auto [i, j] = key;
    if (i < 0 || i >= kDim || j < 0 || j >= kDim)
      throw PreconditionError("matrix entry index (" + std::to_string(i) + "," +
                              std::to_string(j) + ") out of range");
    Expr e = parse(text);
    const std::size_t k = slot(i, j);
    if (upper[k]) {
      if (!structurally_equal(*upper[k], e))
        throw SymmetryConflictError(
            "entries (" + std::to_string(origin[k].first) + "," +
            std::to_string(origin[k].second) + ") and (" + std::to_string(i) + "," +
            std::to_string(j) + ") disagree; the curve must be symmetric");
      continue;
    }
    upper[k] = std::move(e);
    origin[k] = key;
  }
  std::array<Expr, 10> filled;
  for (std::size_t k = 0; k < upper.size(); ++k)
    if (upper[k]) filled[k] = *upper[k];
  return SymmetricCurve(std::move(filled));
}

const Expr& SymmetricCurve::entry(int i, int j) const { return upper_[slot(i, j)]; }

namespace {

template <typename EntryFn>
ComplexMat4 eval_upper(EntryFn&& entry, double t, double eps) {
  ComplexMat4 m;
  for (int i = 0; i < kDim; ++i)
    for (int j = i; j < kDim; ++j) {
      double v = 0.0;
      try {
        v = eval(entry(i, j), t, eps);
      } catch (const DomainError& e) {
        throw EntryDomainError(e, i, j, t, eps);
      }
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

}  // namespace

ComplexMat4 eval_matrix(const SymmetricCurve& c, double t, double eps) {
  return eval_upper([&](int i, int j) -> const Expr& { return c.entry(i, j); }, t, eps);
}

double default_eps_step(double eps) { return 1e-6 * (1.0 + std::abs(eps)); }

ComplexMat4 d_eps_matrix(const SymmetricCurve& c, double t, double eps, double h) {
  if (!(h > 0.0)) throw PreconditionError("d_eps_matrix: step must be positive");
  if (!c.has_eps()) return ComplexMat4::zero();
  if (c.eps_coeffs_) {
    const auto& coeffs = *c.eps_coeffs_;
    return eval_upper([&](int i, int j) -> const Expr& { return coeffs[SymmetricCurve::slot(i, j)]; },
                      t, eps);
  }
  ComplexMat4 d = eval_matrix(c, t, eps + h) - eval_matrix(c, t, eps - h);
  d *= 1.0 / (2.0 * h);
  return d;
}

ComplexMat4 d_eps_matrix(const SymmetricCurve& c, double t, double eps) {
  return d_eps_matrix(c, t, eps, default_eps_step(eps));
}

}  // namespace krein
