#include "krein/analysis.hpp"

#include "krein/error.hpp"

namespace krein {

std::string to_string(Mode m) { return m == Mode::t ? "t" : "eps"; }

Mode parse_mode(const std::string& text) {
  if (text == "t") return Mode::t;
  if (text == "eps") return Mode::eps;
  throw InputError("mode must be 't' or 'eps', got '" + text + "'");
}

void require_mode(const Scenario& s, Mode mode) {
  if (mode != Mode::eps) return;
  if (!s.T) throw InputError("eps mode needs the scenario key 'T'");
  if (!s.curve.has_eps()) throw InputError("eps mode needs a curve that depends on eps");
}

FlowSolution eps_base_flow(const Scenario& s) {
  FlowOptions opts;
  opts.symplectic_tol = s.tolerances.symplectic;
  return integrate(s.curve, ComplexMat4::identity(), *s.T, s.tolerances.eps_steps, 0.0, opts);
}

Analysis analyze(const Scenario& s, Mode mode) {
  require_mode(s, mode);
  Analysis out;
  out.mode = mode;
  if (mode == Mode::t) {
    out.base = s.gamma0;
    out.perturbation = eval_matrix(s.curve, 0.0, 0.0);
  } else {
    const FlowSolution sol = eps_base_flow(s);
    out.base = endpoint(sol);
    out.drift = sol.drift();
    const PerturbationHamiltonian b = perturbation_hamiltonian(s.curve, sol, *s.T);
    out.perturbation = b.matrix;
    out.b_asymmetry = b.asymmetry;
    out.b_asymmetry_warning = b.asymmetry_warning;
  }
  out.derivative = j4() * out.perturbation * out.base;

  const auto lambda0 = detect_double_unitary(out.base, s.tolerances.cluster, s.tolerances.circle);
  if (!lambda0)
    throw NoDoubleEigenvalueError("no double eigenvalue on the unit circle away from +-1");
  out.lambda0 = *lambda0;
  out.pair = jordan_pair(out.base, out.lambda0);
  out.ladder = ladder(out.base, out.derivative, out.lambda0);
  out.closed_form = ladder_closed_form(out.pair, out.perturbation);
  out.coeffs = mode == Mode::t ? expansion_t(out.pair, out.perturbation, s.tolerances.degenerate)
                               : expansion_eps(out.pair, out.perturbation, s.tolerances.degenerate);
  out.verdict = classify_stability(out.coeffs, s.tolerances.degenerate);
  return out;
}

}  // namespace krein
