#include <algorithm>
#include <cmath>

#include "krein/error.hpp"
#include "krein/matrix_core.hpp"

namespace krein {
namespace {

constexpr double kMaxNewtonIterations = 60;

// Roots of x^2 + b x + c, avoiding cancellation in the smaller root.
std::array<Complex, 2> quadratic_roots(Complex b, Complex c) {
  const Complex disc = std::sqrt(b * b - 4.0 * c);
  // Pick the sign that makes |b + sign * disc| large.
  const Complex big = (std::real(std::conj(b) * disc) >= 0.0) ? -(b + disc) / 2.0
                                                              : -(b - disc) / 2.0;
  if (big == Complex(0.0)) return {Complex(0.0), Complex(0.0)};
  return {big, c / big};
}

// Roots of x^3 + a2 x^2 + a1 x + a0 by Cardano's formula.
std::array<Complex, 3> cubic_roots(Complex a2, Complex a1, Complex a0) {
  const Complex shift = a2 / 3.0;
  const Complex p = a1 - a2 * a2 / 3.0;
  const Complex q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;

  const Complex sq = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  Complex u3 = -q / 2.0 + sq;
  const Complex alt = -q / 2.0 - sq;
  if (std::abs(alt) > std::abs(u3)) u3 = alt;

  std::array<Complex, 3> roots{};
  if (u3 == Complex(0.0)) {
    roots.fill(-shift);
    return roots;
  }
  const Complex u = std::pow(u3, 1.0 / 3.0);
  const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
  Complex uk = u;
  for (auto& r : roots) {
    r = uk - p / (3.0 * uk) - shift;
    uk *= omega;
  }
  return roots;
}

// Closed-form roots of the monic quartic z^4 + b z^3 + c z^2 + d z + e.
std::array<Complex, 4> ferrari(Complex b, Complex c, Complex d, Complex e) {
  const Complex b2 = b * b;
  const Complex p = c - 3.0 * b2 / 8.0;
  const Complex q = d - b * c / 2.0 + b2 * b / 8.0;
  const Complex r = e - b * d / 4.0 + b2 * c / 16.0 - 3.0 * b2 * b2 / 256.0;
  const Complex back = -b / 4.0;

  const double scale = 1.0 + std::abs(p) + std::sqrt(std::abs(r));
  std::array<Complex, 4> y{};
  if (std::abs(q) <= 1e-15 * scale * scale * scale) {
    // Biquadratic: w = y^2 solves w^2 + p w + r = 0.
    const auto w = quadratic_roots(p, r);
    y = {std::sqrt(w[0]), -std::sqrt(w[0]), std::sqrt(w[1]), -std::sqrt(w[1])};
  } else {
    // Resolvent cubic m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0; any nonzero
    // root works, the largest one is the best conditioned.
    const auto ms = cubic_roots(p, p * p / 4.0 - r, -q * q / 8.0);
    Complex m = ms[0];
    for (const auto& cand : ms)
      if (std::abs(cand) > std::abs(m)) m = cand;
    const Complex s = std::sqrt(2.0 * m);
    const auto plus = quadratic_roots(-s, p / 2.0 + m + q / (2.0 * s));
    const auto minus = quadratic_roots(s, p / 2.0 + m - q / (2.0 * s));
    y = {plus[0], plus[1], minus[0], minus[1]};
  }
  for (auto& v : y) v += back;
  return y;
}

Complex polish(const QuarticPoly& p, Complex z) {
  Complex best = z;
  double best_res = std::abs(p(best));
  for (int it = 0; it < kMaxNewtonIterations && best_res > 0.0; ++it) {
    const Complex dp = p.derivative(best);
    if (dp == Complex(0.0)) break;
    const Complex next = best - p(best) / dp;
    const double res = std::abs(p(next));
    if (!(res < best_res)) break;
    best = next;
    best_res = res;
  }
  return best;
}

}  // namespace

std::array<Complex, 4> quartic_root_offsets(const QuarticPoly& p) {
  const Complex lead = p.coeffs[4];
  if (lead == Complex(0.0) || !std::isfinite(std::abs(lead)))
    throw DegeneratePolynomialError("quartic_roots: leading coefficient is zero");

  QuarticPoly monic = p;
  monic.center = 0.0;
  for (auto& c : monic.coeffs) c /= lead;

  auto z = ferrari(monic.coeffs[3], monic.coeffs[2], monic.coeffs[1], monic.coeffs[0]);
  std::array<Complex, 4> roots{};
  for (std::size_t i = 0; i < z.size(); ++i) roots[i] = polish(monic, z[i]);
  return roots;
}

std::array<Complex, 4> quartic_roots(const QuarticPoly& p) {
  auto roots = quartic_root_offsets(p);
  for (auto& r : roots) r += p.center;
  return roots;
}

}  // namespace krein
