#pragma once

// Brute-force oracle: track the two eigenvalues of a matrix family that
// split from a double eigenvalue, fit their Puiseux coefficients, and compare
// with the closed-form predictions.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krein/analysis.hpp"
#include "krein/flow.hpp"
#include "krein/scenario.hpp"

namespace krein {

/// parameter -> matrix, plus the matrix at parameter 0 used as the reference
/// of the recentered characteristic polynomial.
struct MatrixFamily {
  std::function<ComplexMat4(double)> at;
  ComplexMat4 base;
};

/// gamma(s) integrated from gamma0 over [0, s] (s may be negative).
MatrixFamily t_family(const Scenario& s);
/// gamma(T, s) integrated from the identity.
MatrixFamily eps_family(const Scenario& s);
MatrixFamily family_for(const Scenario& s, Mode mode);

struct BranchTrack {
  Complex lambda0;
  std::vector<double> grid;
  std::vector<Complex> offset1;  // branch1 - lambda0
  std::vector<Complex> offset2;  // branch2 - lambda0
  std::vector<double> residual1; // |p(branch1)|
  std::vector<double> residual2;
  /// The remaining two eigenvalues at each point (the conjugate cluster).
  std::vector<std::array<Complex, 2>> others;

  Complex branch1(std::size_t i) const { return lambda0 + offset1[i]; }
  Complex branch2(std::size_t i) const { return lambda0 + offset2[i]; }
};

/// Tracks the two eigenvalues nearest lambda0 along `grid` (strictly
/// monotone, all positive; PreconditionError otherwise). Points are processed
/// from the smallest parameter upwards, seeded by `seed_a` (branch 2 starts
/// nearest +seed_a sqrt(s)) when given. Throws TrackingAmbiguityError when a
/// third eigenvalue comes within twice the pair spread, or the pair strays
/// more than half the gap to the conjugate cluster.
BranchTrack track(const MatrixFamily& family, Complex lambda0, const std::vector<double>& grid,
                  std::optional<Complex> seed_a = std::nullopt);

struct PuiseuxFit {
  Complex a;        // branch 2 ~ lambda0 + a sqrt(s) + mu s
  Complex mu;       // joint least-squares slope
  Complex mu_sum;   // Richardson slope of (lambda1 + lambda2 - 2 lambda0) / 2
  double kappa = 0.0;       // Re(a^2 conj(lambda0)^2)
  Complex sum_derivative;   // 2 mu_sum
};

/// Weighted least squares (residuals scaled by 1/s) of the branch offsets to
/// -+a sqrt(s) + mu s, and a three-point Richardson fit of the sum slope
/// assuming a c1 sqrt(s) + c2 s remainder. Needs >= 4 distinct points;
/// IllConditionedFitError otherwise.
PuiseuxFit fit_puiseux(const BranchTrack& track, Complex lambda0);

struct ModeComparison {
  Mode mode = Mode::t;
  Analysis analysis;
  BranchTrack track;
  PuiseuxFit fit;
  double kappa_rel_error = 0.0;
  double sum_derivative_rel_error = 0.0;
  /// |lambda1 - lambda2| at s0 divided by the same at 4 s0; sqrt scaling gives 1/2.
  double scaling_ratio = 0.0;
  /// (|lambda1 - lambda0| / s) at s0 over the same at 4 s0; sqrt scaling gives 2.
  double quotient_growth = 0.0;
  /// Richardson sum slope on the grid with its maximum halved.
  Complex sum_derivative_halved;
  double sum_slope_change = 0.0;
};

/// Eigenvalues at parameter +s and -s, checked against the stability dichotomy.
struct StabilityProbe {
  double s = 0.0;
  int unstable_direction = 0;
  std::array<Complex, 4> forward{};
  std::array<Complex, 4> backward{};
  double forward_max_modulus = 0.0;
  double backward_max_modulus = 0.0;
  double forward_circle_deviation = 0.0;  // max ||lambda| - 1|
  double backward_circle_deviation = 0.0;
  double forward_min_separation = 0.0;
  double backward_min_separation = 0.0;
  /// Some |lambda| > 1 + delta on the unstable side.
  bool unstable_side_ok = false;
  /// All four on the circle within delta and pairwise separated by more than
  /// min_separation on the stable side.
  bool stable_side_ok = false;
};

StabilityProbe probe_stability(const MatrixFamily& family, double s, int unstable_direction,
                               double delta = 1e-6, double min_separation = 1e-3);

/// <B x, y> for the chain vectors against the time integrals of
/// <A'(t) x(t), y(t)> with x(t) = gamma(t, 0) x.
struct BilinearCheck {
  Complex b11, b12, b21;           // <B eta1,eta1>, <B eta1,eta2>, <B eta2,eta1>
  Complex int11, int12, int21;     // matching time integrals
  double rel11 = 0.0, rel12 = 0.0, rel21 = 0.0;
  double max_rel() const;
};

/// `sol` must start from the identity at t = 0 with eps = 0 over [0, T].
BilinearCheck bilinear_identities(const SymmetricCurve& curve, const FlowSolution& sol,
                                  const JordanPair& pair, const ComplexMat4& b);

struct CompareOptions {
  bool run_t = true;
  /// Runs only when the scenario supports eps-mode.
  bool run_eps = true;
  std::optional<GridSpec> t_grid;
  std::optional<GridSpec> eps_grid;
  double probe_parameter = 1e-4;
};

struct OracleReport {
  std::optional<ModeComparison> t;
  std::optional<ModeComparison> eps;
  std::optional<StabilityProbe> probe;
  std::optional<BilinearCheck> bilinear;
  /// Named |emp - pred| / max(|pred|, 1e-12) values.
  std::vector<std::pair<std::string, double>> relative_errors;
  double max_relative_error() const;
};

double relative_error(Complex empirical, Complex predicted);

ModeComparison compare_mode(const Scenario& s, Mode mode, const GridSpec& grid);

OracleReport compare(const Scenario& s, const CompareOptions& options = {});

}  // namespace krein
