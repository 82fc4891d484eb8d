#include "krein/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "krein/error.hpp"

namespace krein {
namespace {

Complex horner(const QuarticPoly& p, Complex z) {
  Complex acc = p.coeffs[4];
  for (int k = 3; k >= 0; --k) acc = acc * z + p.coeffs[static_cast<std::size_t>(k)];
  return acc;
}

// Sum of the two roots nearest the center, refined by Newton on the
// factorization p = (z^2 - S z + P)(z^2 + r1 z + r0). The individual near
// roots of a barely split pair carry errors of order sqrt(eps) relative to
// the split, but S is a well-conditioned function of the coefficients.
Complex refined_cluster_sum(const QuarticPoly& p, Complex z0, Complex z1) {
  const Complex lead = p.coeffs[4];
  const Complex c0 = p.coeffs[0] / lead, c1 = p.coeffs[1] / lead, c2 = p.coeffs[2] / lead,
                c3 = p.coeffs[3] / lead;
  Complex s = z0 + z1, q = z0 * z1;
  auto residual = [&](Complex s_, Complex q_, Complex& r1, Complex& r0) {
    r1 = c3 + s_;
    r0 = c2 + s_ * r1 - q_;
    return std::array<Complex, 2>{-s_ * r0 + q_ * r1 - c1, q_ * r0 - c0};
  };
  Complex r1, r0;
  auto f = residual(s, q, r1, r0);
  double size = std::abs(f[0]) + std::abs(f[1]);
  for (int it = 0; it < 8 && size > 0.0; ++it) {
    const Complex j11 = -r0 - s * (r1 + s) + q, j12 = s + r1;
    const Complex j21 = q * (r1 + s), j22 = r0 - q;
    const Complex det = j11 * j22 - j12 * j21;
    if (det == Complex{}) break;
    const Complex ds = (f[0] * j22 - j12 * f[1]) / det;
    const Complex dq = (j11 * f[1] - j21 * f[0]) / det;
    Complex nr1, nr0;
    const auto nf = residual(s - ds, q - dq, nr1, nr0);
    const double nsize = std::abs(nf[0]) + std::abs(nf[1]);
    if (!(nsize < size)) break;
    s -= ds;
    q -= dq;
    f = nf;
    size = nsize;
  }
  return s;
}

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw PreconditionError("track: empty grid");
  for (double s : grid)
    if (!(s > 0.0) || !std::isfinite(s)) throw PreconditionError("track: grid values must be positive");
  if (grid.size() < 2) return;
  const bool up = grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i)
    if ((grid[i] > grid[i - 1]) != up || grid[i] == grid[i - 1])
      throw PreconditionError("track: grid must be strictly monotone");
}

MatrixFamily flow_family(const SymmetricCurve& curve, const ComplexMat4& start, int steps,
                         double symplectic_tol, bool vary_eps, double horizon) {
  MatrixFamily f;
  FlowOptions opts;
  opts.symplectic_tol = symplectic_tol;
  if (vary_eps) {
    f.at = [curve, start, steps, opts, horizon](double eps) {
      return endpoint(integrate(curve, start, horizon, steps, eps, opts));
    };
    f.base = f.at(0.0);
  } else {
    f.at = [curve, start, steps, opts](double t) {
      if (t == 0.0) return start;
      return endpoint(integrate(curve, start, t, steps, 0.0, opts));
    };
    f.base = start;
  }
  return f;
}

std::array<double, 3> circle_stats(const std::array<Complex, 4>& ev) {
  double max_mod = 0.0, dev = 0.0, sep = INFINITY;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    max_mod = std::max(max_mod, std::abs(ev[i]));
    dev = std::max(dev, std::abs(std::abs(ev[i]) - 1.0));
    for (std::size_t j = i + 1; j < ev.size(); ++j) sep = std::min(sep, std::abs(ev[i] - ev[j]));
  }
  return {max_mod, dev, sep};
}

}  // namespace

MatrixFamily t_family(const Scenario& s) {
  return flow_family(s.curve, s.gamma0, s.tolerances.steps_per_point, s.tolerances.symplectic,
                     false, 0.0);
}

MatrixFamily eps_family(const Scenario& s) {
  require_mode(s, Mode::eps);
  return flow_family(s.curve, ComplexMat4::identity(), s.tolerances.eps_steps,
                     s.tolerances.symplectic, true, *s.T);
}

MatrixFamily family_for(const Scenario& s, Mode mode) {
  return mode == Mode::t ? t_family(s) : eps_family(s);
}

BranchTrack track(const MatrixFamily& family, Complex lambda0, const std::vector<double>& grid,
                  std::optional<Complex> seed_a) {
  check_grid(grid);
  const std::size_t n = grid.size();
  BranchTrack out;
  out.lambda0 = lambda0;
  out.grid = grid;
  out.offset1.resize(n);
  out.offset2.resize(n);
  out.residual1.resize(n);
  out.residual2.resize(n);
  out.others.resize(n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grid[a] < grid[b]; });

  const double gap = std::abs(lambda0 - std::conj(lambda0));
  bool have_prev = false;
  Complex prev1, prev2;
  double prev_s = 0.0;

  for (std::size_t idx : order) {
    const double s = grid[idx];
    const QuarticPoly p = charpoly_three_term(family.base, family.at(s), lambda0);
    auto z = quartic_root_offsets(p);
    std::sort(z.begin(), z.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });

    const double spread = std::abs(z[0] - z[1]);
    const double reach = std::max(std::abs(z[0]), std::abs(z[1]));
    if (reach > 0.5 * gap)
      throw TrackingAmbiguityError("track: split pair strays beyond half the gap to the "
                                   "conjugate cluster", s);
    if (std::abs(z[2]) < 2.0 * spread)
      throw TrackingAmbiguityError("track: a third eigenvalue lies within twice the pair spread", s);

    const Complex shift = 0.5 * (refined_cluster_sum(p, z[0], z[1]) - (z[0] + z[1]));
    Complex u = z[0] + shift, v = z[1] + shift;

    bool swap = false;
    if (have_prev) {
      const double scale = std::sqrt(s / prev_s);
      const Complex e1 = prev1 * scale, e2 = prev2 * scale;
      swap = std::abs(u - e2) + std::abs(v - e1) < std::abs(u - e1) + std::abs(v - e2);
    } else if (seed_a) {
      const Complex e2 = *seed_a * std::sqrt(s);
      swap = std::abs(u - e2) < std::abs(v - e2);
    }
    if (swap) std::swap(u, v);

    out.offset1[idx] = u;
    out.offset2[idx] = v;
    out.residual1[idx] = std::abs(horner(p, u));
    out.residual2[idx] = std::abs(horner(p, v));
    out.others[idx] = {lambda0 + z[2], lambda0 + z[3]};
    prev1 = u;
    prev2 = v;
    prev_s = s;
    have_prev = true;
  }
  return out;
}

PuiseuxFit fit_puiseux(const BranchTrack& tr, Complex lambda0) {
  const std::size_t n = tr.grid.size();
  if (n < 4) throw IllConditionedFitError("fit_puiseux: need at least 4 grid points");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return tr.grid[a] < tr.grid[b]; });
  const double smin = tr.grid[order.front()], smax = tr.grid[order.back()];
  if (!(smax > smin * (1.0 + 1e-9)))
    throw IllConditionedFitError("fit_puiseux: grid too narrow to separate sqrt(s) from s");

  // With residuals weighted by 1/s the normal equations decouple: the
  // difference of the branches carries a, their sum carries mu.
  Complex a_num, mu_num;
  double a_den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = tr.grid[i];
    const Complex d1 = tr.offset1[i], d2 = tr.offset2[i];
    a_num += (d2 - d1) / (s * std::sqrt(s));
    a_den += 2.0 / s;
    mu_num += (d1 + d2) / s;
  }
  PuiseuxFit fit;
  fit.a = a_num / a_den;
  fit.mu = mu_num / (2.0 * static_cast<double>(n));

  // m(s) = mu + c1 sqrt(s) + c2 s through the three smallest points.
  std::array<double, 3> x{};
  std::array<Complex, 3> m{};
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t i = order[k];
    x[k] = std::sqrt(tr.grid[i] / tr.grid[order[2]]);
    m[k] = (tr.offset1[i] + tr.offset2[i]) / (2.0 * tr.grid[i]);
  }
  // Vandermonde in x: [1, x, x^2]; c1, c2 absorb the rescaling.
  const double det = (x[1] - x[0]) * (x[2] - x[0]) * (x[2] - x[1]);
  if (!(std::abs(det) > 1e-12))
    throw IllConditionedFitError("fit_puiseux: Richardson points are not distinct");
  // Lagrange interpolation at x = 0.
  fit.mu_sum = m[0] * (x[1] * x[2]) / ((x[0] - x[1]) * (x[0] - x[2])) +
               m[1] * (x[0] * x[2]) / ((x[1] - x[0]) * (x[1] - x[2])) +
               m[2] * (x[0] * x[1]) / ((x[2] - x[0]) * (x[2] - x[1]));

  const Complex lc = std::conj(lambda0);
  fit.kappa = (fit.a * fit.a * lc * lc).real();
  fit.sum_derivative = 2.0 * fit.mu_sum;
  return fit;
}

double relative_error(Complex empirical, Complex predicted) {
  return std::abs(empirical - predicted) / std::max(std::abs(predicted), 1e-12);
}

ModeComparison compare_mode(const Scenario& s, Mode mode, const GridSpec& grid) {
  ModeComparison out;
  out.mode = mode;
  out.analysis = analyze(s, mode);
  const MatrixFamily family = family_for(s, mode);
  const Complex l0 = out.analysis.lambda0;
  const Complex a = out.analysis.coeffs.a;

  out.track = track(family, l0, grid.points(), a);
  out.fit = fit_puiseux(out.track, l0);
  out.kappa_rel_error = relative_error(out.fit.kappa, out.analysis.coeffs.kappa);
  out.sum_derivative_rel_error =
      relative_error(out.fit.sum_derivative, out.analysis.coeffs.sum_derivative);

  const double s0 = grid.min;
  const BranchTrack pair = track(family, l0, {s0, 4.0 * s0}, a);
  out.scaling_ratio = std::abs(pair.offset1[0] - pair.offset2[0]) /
                      std::abs(pair.offset1[1] - pair.offset2[1]);
  out.quotient_growth = (std::abs(pair.offset1[0]) / s0) / (std::abs(pair.offset1[1]) / (4.0 * s0));

  GridSpec halved = grid;
  halved.max = 0.5 * grid.max;
  const PuiseuxFit half_fit = fit_puiseux(track(family, l0, halved.points(), a), l0);
  out.sum_derivative_halved = half_fit.sum_derivative;
  out.sum_slope_change = relative_error(half_fit.sum_derivative, out.fit.sum_derivative);
  return out;
}

StabilityProbe probe_stability(const MatrixFamily& family, double s, int unstable_direction,
                               double delta, double min_separation) {
  if (!(s > 0.0)) throw PreconditionError("probe_stability: parameter must be positive");
  if (unstable_direction != 1 && unstable_direction != -1)
    throw PreconditionError("probe_stability: direction must be +1 or -1");
  StabilityProbe out;
  out.s = s;
  out.unstable_direction = unstable_direction;
  out.forward = eigenvalues(family.at(s));
  out.backward = eigenvalues(family.at(-s));
  const auto f = circle_stats(out.forward);
  const auto b = circle_stats(out.backward);
  out.forward_max_modulus = f[0];
  out.forward_circle_deviation = f[1];
  out.forward_min_separation = f[2];
  out.backward_max_modulus = b[0];
  out.backward_circle_deviation = b[1];
  out.backward_min_separation = b[2];

  const auto& unstable = unstable_direction > 0 ? f : b;
  const auto& stable = unstable_direction > 0 ? b : f;
  out.unstable_side_ok = unstable[0] > 1.0 + delta;
  out.stable_side_ok = stable[1] <= delta && stable[2] > min_separation;
  return out;
}

double BilinearCheck::max_rel() const { return std::max({rel11, rel12, rel21}); }

BilinearCheck bilinear_identities(const SymmetricCurve& curve, const FlowSolution& sol,
                                  const JordanPair& pair, const ComplexMat4& b) {
  if (sol.t_begin() != 0.0 || sol.eps() != 0.0)
    throw PreconditionError("bilinear_identities: solution must start at t = 0 with eps = 0");
  if ((sol.gammas().front() - ComplexMat4::identity()).max_abs() > 1e-12)
    throw PreconditionError("bilinear_identities: solution must start from the identity");

  BilinearCheck out;
  const auto w = simpson_weights(sol.steps(), sol.step());
  for (std::size_t i = 0; i < sol.times().size(); ++i) {
    const ComplexMat4 da = d_eps_matrix(curve, sol.times()[i], 0.0);
    const ComplexVec4 x1 = sol.gammas()[i] * pair.eta1;
    const ComplexVec4 shift = sol.gammas()[i] * pair.eta2 - x1;
    const ComplexVec4 ax1 = da * x1;
    out.int11 += w[i] * inner(ax1, x1);
    out.int12 += w[i] * inner(ax1, shift);
    out.int21 += w[i] * inner(da * shift, x1);
  }
  out.b11 = inner(b * pair.eta1, pair.eta1);
  out.b12 = inner(b * pair.eta1, pair.eta2);
  out.b21 = inner(b * pair.eta2, pair.eta1);
  out.rel11 = relative_error(out.b11, out.int11);
  out.rel12 = relative_error(out.b12, out.int12);
  out.rel21 = relative_error(out.b21, out.int21);
  return out;
}

double OracleReport::max_relative_error() const {
  double worst = 0.0;
  for (const auto& [name, value] : relative_errors) worst = std::max(worst, value);
  return worst;
}

OracleReport compare(const Scenario& s, const CompareOptions& options) {
  OracleReport out;
  const bool eps_ok = s.T.has_value() && s.curve.has_eps();
  if (options.run_t) {
    out.t = compare_mode(s, Mode::t, options.t_grid.value_or(s.t_grid));
    out.relative_errors.emplace_back("kappa_t", out.t->kappa_rel_error);
    out.relative_errors.emplace_back("sum_derivative_t", out.t->sum_derivative_rel_error);
    out.probe = probe_stability(t_family(s), options.probe_parameter,
                                out.t->analysis.verdict.unstable_direction);
  }
  if (options.run_eps && eps_ok) {
    out.eps = compare_mode(s, Mode::eps, options.eps_grid.value_or(s.eps_grid));
    out.relative_errors.emplace_back("kappa_eps", out.eps->kappa_rel_error);
    out.relative_errors.emplace_back("sum_derivative_eps", out.eps->sum_derivative_rel_error);
    out.bilinear = bilinear_identities(s.curve, eps_base_flow(s), out.eps->analysis.pair,
                                       out.eps->analysis.perturbation);
    if (!out.probe)
      out.probe = probe_stability(eps_family(s), options.probe_parameter,
                                  out.eps->analysis.verdict.unstable_direction);
  }
  return out;
}

}  // namespace krein
