#pragma once

#include <vector>

#include "krein/curve.hpp"
#include "krein/matrix_core.hpp"

namespace krein {

struct FlowOptions {
  /// Start time of the integration.
  double t0 = 0.0;
  /// Symplecticity drift above which a solution is flagged non-conforming.
  double symplectic_tol = 1e-8;
};

/// Fundamental solution of d(gamma)/dt = J4 A(t, eps) gamma on a uniform grid.
class FlowSolution {
 public:
  FlowSolution(std::vector<double> times, std::vector<ComplexMat4> gammas, double eps,
               double drift, double symplectic_tol);

  const std::vector<double>& times() const { return times_; }
  const std::vector<ComplexMat4>& gammas() const { return gammas_; }
  double eps() const { return eps_; }
  /// Max over the grid of ||gamma^T J4 gamma - J4||_max.
  double drift() const { return drift_; }
  bool conforming() const { return conforming_; }
  int steps() const { return static_cast<int>(times_.size()) - 1; }
  double step() const { return (times_.back() - times_.front()) / steps(); }
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }

 private:
  std::vector<double> times_;
  std::vector<ComplexMat4> gammas_;
  double eps_;
  double drift_;
  bool conforming_;
};

/// Classical RK4 for gamma over [t0, t0 + T] with `steps` uniform steps.
/// T may be negative to integrate backwards in time. gamma_init must be
/// symplectic to 1e-8 (NonSymplecticError otherwise); steps >= 2 and T != 0
/// (PreconditionError). Expression domain errors propagate.
FlowSolution integrate(const SymmetricCurve& curve, const ComplexMat4& gamma_init, double T,
                       int steps, double eps, const FlowOptions& options = {});

/// Final grid matrix.
ComplexMat4 endpoint(const FlowSolution& sol);

/// -J4 M^T J4, the inverse of any symplectic M.
ComplexMat4 symplectic_inverse(const ComplexMat4& m);

struct PerturbationHamiltonian {
  ComplexMat4 matrix;       // symmetrized B(T, eps)
  double asymmetry = 0.0;   // max |B - B^T| / 2 before symmetrization
  bool asymmetry_warning = false;
};

/// B(T, eps) = int_0^T (gamma(T)^-1)^T gamma(t)^T dA/deps(t, eps) gamma(t) gamma(T)^-1 dt
/// by composite Simpson over the solution grid (one trapezoid panel closes
/// an odd grid). `T` must match the solution horizon, which must start at 0.
/// The initial condition cancels from the integrand, so any symplectic
/// gamma(0) is accepted.
PerturbationHamiltonian perturbation_hamiltonian(const SymmetricCurve& curve,
                                                 const FlowSolution& sol, double T);

/// Composite Simpson weights for a uniform grid of n + 1 points and step h.
std::vector<double> simpson_weights(int n, double h);

}  // namespace krein
