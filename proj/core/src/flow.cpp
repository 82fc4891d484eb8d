#include "krein/flow.hpp"

#include <array>
#include <cmath>
#include <string>

#include "krein/error.hpp"

namespace krein {
namespace {

constexpr double kAsymmetryWarning = 1e-6;

// Real 4x4 matrices for the integrator; the flow of a real Hamiltonian
// system stays real, so no imaginary part is ever produced.
using Real4 = std::array<double, 16>;

Real4 real_part(const ComplexMat4& m) {
  Real4 r{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r[static_cast<std::size_t>(i * 4 + j)] = m(i, j).real();
  return r;
}

ComplexMat4 to_complex(const Real4& r) {
  ComplexMat4 m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m(i, j) = r[static_cast<std::size_t>(i * 4 + j)];
  return m;
}

// J4 * A for a real A: rows 0,1 come from rows 2,3 of A, rows 2,3 from -rows 0,1.
Real4 j_times(const Real4& a) {
  Real4 r{};
  for (int j = 0; j < kDim; ++j) {
    r[static_cast<std::size_t>(0 * 4 + j)] = a[static_cast<std::size_t>(2 * 4 + j)];
    r[static_cast<std::size_t>(1 * 4 + j)] = a[static_cast<std::size_t>(3 * 4 + j)];
    r[static_cast<std::size_t>(2 * 4 + j)] = -a[static_cast<std::size_t>(0 * 4 + j)];
    r[static_cast<std::size_t>(3 * 4 + j)] = -a[static_cast<std::size_t>(1 * 4 + j)];
  }
  return r;
}

Real4 mul(const Real4& a, const Real4& b) {
  Real4 r{};
  for (int i = 0; i < kDim; ++i)
    for (int k = 0; k < kDim; ++k) {
      const double aik = a[static_cast<std::size_t>(i * 4 + k)];
      for (int j = 0; j < kDim; ++j)
        r[static_cast<std::size_t>(i * 4 + j)] += aik * b[static_cast<std::size_t>(k * 4 + j)];
    }
  return r;
}

Real4 axpy(const Real4& y, double a, const Real4& x) {
  Real4 r{};
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = y[k] + a * x[k];
  return r;
}

double real_symplectic_defect(const Real4& g) {
  // (g^T J g)_{ij} - J_{ij}
  const Real4 jg = j_times(g);
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      double s = 0.0;
      for (int k = 0; k < kDim; ++k)
        s += g[static_cast<std::size_t>(k * 4 + i)] * jg[static_cast<std::size_t>(k * 4 + j)];
      worst = std::max(worst, std::abs(s - j4()(i, j).real()));
    }
  return worst;
}

}  // namespace

FlowSolution::FlowSolution(std::vector<double> times, std::vector<ComplexMat4> gammas,
                           double eps, double drift, double symplectic_tol)
    : times_(std::move(times)),
      gammas_(std::move(gammas)),
      eps_(eps),
      drift_(drift),
      conforming_(drift <= symplectic_tol) {}

FlowSolution integrate(const SymmetricCurve& curve, const ComplexMat4& gamma_init, double T,
                       int steps, double eps, const FlowOptions& options) {
  if (steps < 2) throw PreconditionError("integrate: need at least 2 steps");
  if (!(T != 0.0) || !std::isfinite(T)) throw PreconditionError("integrate: horizon must be nonzero");
  if (!gamma_init.is_finite() || !is_symplectic(gamma_init, 1e-8))
    throw NonSymplecticError("integrate: initial condition is not symplectic (defect " +
                             std::to_string(symplectic_defect(gamma_init)) + ")");

  const double h = T / steps;
  auto rhs = [&](double t, const Real4& g) {
    return mul(j_times(real_part(eval_matrix(curve, t, eps))), g);
  };

  std::vector<double> times(static_cast<std::size_t>(steps) + 1);
  std::vector<ComplexMat4> gammas(static_cast<std::size_t>(steps) + 1);
  Real4 g = real_part(gamma_init);
  times[0] = options.t0;
  gammas[0] = gamma_init;
  double drift = real_symplectic_defect(g);

  // Compensated accumulation of the state: over short horizons with many
  // steps the increments are far below the entries, and plain addition
  // would lose their low-order bits at every step.
  Real4 carry{};
  for (int n = 0; n < steps; ++n) {
    const double t = options.t0 + n * h;
    const Real4 k1 = rhs(t, g);
    const Real4 k2 = rhs(t + 0.5 * h, axpy(g, 0.5 * h, k1));
    const Real4 k3 = rhs(t + 0.5 * h, axpy(g, 0.5 * h, k2));
    const Real4 k4 = rhs(t + h, axpy(g, h, k3));
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double y = h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]) - carry[k];
      const double sum = g[k] + y;
      carry[k] = (sum - g[k]) - y;
      g[k] = sum;
    }

    const auto idx = static_cast<std::size_t>(n) + 1;
    times[idx] = (n + 1 == steps) ? options.t0 + T : options.t0 + (n + 1) * h;
    gammas[idx] = to_complex(g);
    drift = std::max(drift, real_symplectic_defect(g));
  }
  return FlowSolution(std::move(times), std::move(gammas), eps, drift, options.symplectic_tol);
}

ComplexMat4 endpoint(const FlowSolution& sol) { return sol.gammas().back(); }

ComplexMat4 symplectic_inverse(const ComplexMat4& m) {
  return -(j4() * m.transpose() * j4());
}

std::vector<double> simpson_weights(int n, double h) {
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  const int simpson_panels = (n % 2 == 0) ? n : n - 1;
  for (int i = 0; i + 2 <= simpson_panels; i += 2) {
    w[static_cast<std::size_t>(i)] += h / 3.0;
    w[static_cast<std::size_t>(i) + 1] += 4.0 * h / 3.0;
    w[static_cast<std::size_t>(i) + 2] += h / 3.0;
  }
  if (simpson_panels != n) {
    w[static_cast<std::size_t>(n) - 1] += h / 2.0;
    w[static_cast<std::size_t>(n)] += h / 2.0;
  }
  return w;
}

PerturbationHamiltonian perturbation_hamiltonian(const SymmetricCurve& curve,
                                                 const FlowSolution& sol, double T) {
  if (sol.t_begin() != 0.0)
    throw PreconditionError("perturbation_hamiltonian: solution must start at t = 0");
  if (std::abs(sol.t_end() - T) > 1e-12 * std::max(1.0, std::abs(T)))
    throw PreconditionError("perturbation_hamiltonian: T does not match the solution horizon");

  const ComplexMat4 gamma_T = endpoint(sol);
  const ComplexMat4 inv_T = symplectic_inverse(gamma_T);
  if ((inv_T * gamma_T - ComplexMat4::identity()).max_abs() > 1e-6)
    throw CorruptedSolutionError("perturbation_hamiltonian: endpoint is not invertible "
                                 "as a symplectic matrix");

  const auto weights = simpson_weights(sol.steps(), sol.step());
  ComplexMat4 acc;
  for (std::size_t i = 0; i < sol.times().size(); ++i) {
    const ComplexMat4 g = sol.gammas()[i] * inv_T;
    const ComplexMat4 da = d_eps_matrix(curve, sol.times()[i], sol.eps());
    acc += weights[i] * (g.transpose() * da * g);
  }

  PerturbationHamiltonian out;
  out.asymmetry = 0.5 * (acc - acc.transpose()).max_abs();
  out.asymmetry_warning = out.asymmetry > kAsymmetryWarning;
  out.matrix = 0.5 * (acc + acc.transpose());
  return out;
}

}  // namespace krein
