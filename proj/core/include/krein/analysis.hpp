#pragma once

#include <optional>
#include <string>

#include "krein/bifurcation.hpp"
#include "krein/flow.hpp"
#include "krein/scenario.hpp"
#include "krein/spectral.hpp"

namespace krein {

/// t: splitting of gamma(t) at t = 0 from gamma(0) = gamma0.
/// eps: splitting of the endpoint gamma(T, eps) at eps = 0 from gamma(0, eps) = Id.
enum class Mode { t, eps };

std::string to_string(Mode m);
/// "t" or "eps"; throws InputError otherwise.
Mode parse_mode(const std::string& text);

/// Throws InputError when the scenario cannot run in `mode` (eps-mode needs
/// T and an eps-dependent curve).
void require_mode(const Scenario& s, Mode mode);

/// The full prediction pipeline for one mode.
struct Analysis {
  Mode mode = Mode::t;
  ComplexMat4 base;          // gamma0, or gamma(T, 0)
  ComplexMat4 perturbation;  // A(0), or B(T, 0)
  ComplexMat4 derivative;    // J4 * perturbation * base
  Complex lambda0;
  JordanPair pair;
  CoefficientLadder ladder;
  LadderClosedForm closed_form;
  ExpansionCoefficients coeffs;
  StabilityVerdict verdict;
  /// Flow diagnostics (eps-mode only).
  double drift = 0.0;
  double b_asymmetry = 0.0;
  bool b_asymmetry_warning = false;
};

/// Throws NoDoubleEigenvalueError when no double unit-circle eigenvalue is
/// found, and the hypothesis errors of jordan_pair / expansion /
/// classify_stability.
Analysis analyze(const Scenario& s, Mode mode);

/// gamma(T, 0) from the identity with the scenario's eps-step budget.
FlowSolution eps_base_flow(const Scenario& s);

}  // namespace krein
