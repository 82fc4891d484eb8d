#include "krein/report.hpp"

#include <algorithm>
#include <charconv>

#include <json.hpp>

namespace krein {
namespace {

using nlohmann::json;

json cx(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json vec(const ComplexVec4& v) {
  json out = json::array();
  for (int i = 0; i < kDim; ++i) out.push_back(cx(v[i]));
  return out;
}

json mat(const ComplexMat4& m) {
  json out = json::array();
  for (int i = 0; i < kDim; ++i) {
    json row = json::array();
    for (int j = 0; j < kDim; ++j) row.push_back(m(i, j).real());
    out.push_back(row);
  }
  return out;
}

json coefficients(const ExpansionCoefficients& c) {
  return {{"numerator", cx(c.numerator)},
          {"kappa", c.kappa},
          {"kappa_imag_residue", c.kappa_imag},
          {"a", cx(c.a)},
          {"a_squared", cx(c.a * c.a)},
          {"bracket", cx(c.bracket)},
          {"second_order", cx(c.second_order)},
          {"sum_derivative", cx(c.sum_derivative)}};
}

json verdict(const StabilityVerdict& v) {
  return {{"verdict", to_string(v.verdict)},
          {"kappa", v.kappa},
          {"unstable_direction", v.unstable_direction}};
}

json analysis_body(const Analysis& a) {
  json ladder_c = json::array();
  for (const Complex& c : a.ladder.c) ladder_c.push_back(cx(c));
  double worst_pairing = 0.0;
  for (const Complex& p : a.pair.diagnostics.orthogonality_pairings)
    worst_pairing = std::max(worst_pairing, std::abs(p));

  json out = {
      {"mode", to_string(a.mode)},
      {"lambda0", cx(a.lambda0)},
      {"theta0", std::arg(a.lambda0)},
      {"eta1", vec(a.pair.eta1)},
      {"eta2", vec(a.pair.eta2)},
      {"form_21", cx(a.pair.form_21)},
      {"form_12", cx(a.pair.form_12)},
      {"form_22", cx(a.pair.form_22)},
      {"expansion", coefficients(a.coeffs)},
      {"branch_convention",
       "lambda_j(s) = lambda0 + (-1)^j a sqrt(s) + second_order s; a is the principal root"},
      {"stability", verdict(a.verdict)},
      {"ladder",
       {{"c", ladder_c},
        {"c31", cx(a.ladder.c31)},
        {"c21", cx(a.ladder.c21)},
        {"a_squared", cx(a.ladder.a_squared)},
        {"c31_closed_form", cx(a.closed_form.c31)},
        {"c21_closed_form", cx(a.closed_form.c21)}}},
      {"perturbation", mat(a.perturbation)},
      {"diagnostics",
       {{"singular_values", a.pair.diagnostics.singular_values},
        {"chain_residual", a.pair.diagnostics.chain_residual},
        {"eigen_residual", a.pair.diagnostics.eigen_residual},
        {"max_orthogonality_pairing", worst_pairing}}}};
  if (a.mode == Mode::eps) {
    out["diagnostics"]["flow_drift"] = a.drift;
    out["diagnostics"]["b_asymmetry"] = a.b_asymmetry;
    out["diagnostics"]["b_asymmetry_warning"] = a.b_asymmetry_warning;
  }
  return out;
}

json comparison(const ModeComparison& c) {
  return {{"mode", to_string(c.mode)},
          {"grid", {{"min", c.track.grid.front()},
                    {"max", c.track.grid.back()},
                    {"count", c.track.grid.size()}}},
          {"lambda0", cx(c.analysis.lambda0)},
          {"kappa_predicted", c.analysis.coeffs.kappa},
          {"kappa_empirical", c.fit.kappa},
          {"sum_derivative_predicted", cx(c.analysis.coeffs.sum_derivative)},
          {"sum_derivative_empirical", cx(c.fit.sum_derivative)},
          {"a_predicted", cx(c.analysis.coeffs.a)},
          {"a_empirical", cx(c.fit.a)},
          {"mu_least_squares", cx(c.fit.mu)},
          {"kappa_relative_error", c.kappa_rel_error},
          {"sum_derivative_relative_error", c.sum_derivative_rel_error},
          {"scaling_ratio", c.scaling_ratio},
          {"quotient_growth", c.quotient_growth},
          {"sum_derivative_halved_grid", cx(c.sum_derivative_halved)},
          {"sum_slope_change", c.sum_slope_change}};
}

json probe(const StabilityProbe& p) {
  json fwd = json::array(), bwd = json::array();
  for (const Complex& z : p.forward) fwd.push_back(cx(z));
  for (const Complex& z : p.backward) bwd.push_back(cx(z));
  return {{"parameter", p.s},
          {"unstable_direction", p.unstable_direction},
          {"forward", fwd},
          {"backward", bwd},
          {"forward_max_modulus", p.forward_max_modulus},
          {"backward_max_modulus", p.backward_max_modulus},
          {"forward_circle_deviation", p.forward_circle_deviation},
          {"backward_circle_deviation", p.backward_circle_deviation},
          {"forward_min_separation", p.forward_min_separation},
          {"backward_min_separation", p.backward_min_separation},
          {"unstable_side_ok", p.unstable_side_ok},
          {"stable_side_ok", p.stable_side_ok}};
}

json bilinear(const BilinearCheck& b) {
  return {{"B11", cx(b.b11)},   {"B12", cx(b.b12)},   {"B21", cx(b.b21)},
          {"int11", cx(b.int11)}, {"int12", cx(b.int12)}, {"int21", cx(b.int21)},
          {"rel11", b.rel11},   {"rel12", b.rel12},   {"rel21", b.rel21}};
}

void put(std::ostream& out, double x) { out << format_double(x); }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string analysis_json(const Scenario& s, const Analysis& a) {
  json doc = {{"scenario", s.name}};
  doc.update(analysis_body(a));
  return doc.dump(2);
}

std::string classify_json(const Scenario& s, const Analysis& a) {
  json doc = {{"scenario", s.name}, {"mode", to_string(a.mode)}};
  doc.update(verdict(a.verdict));
  return doc.dump(2);
}

std::string oracle_json(const Scenario& s, const OracleReport& r) {
  json doc = {{"scenario", s.name}};
  if (r.t) doc["t"] = comparison(*r.t);
  if (r.eps) doc["eps"] = comparison(*r.eps);
  if (r.probe) doc["stability_probe"] = probe(*r.probe);
  if (r.bilinear) doc["bilinear_identities"] = bilinear(*r.bilinear);
  json errs = json::object();
  for (const auto& [name, value] : r.relative_errors) errs[name] = value;
  doc["relative_errors"] = errs;
  doc["max_relative_error"] = r.max_relative_error();
  return doc.dump(2);
}

void write_track_csv(std::ostream& out, const BranchTrack& track) {
  out << "s,re_branch1,im_branch1,re_branch2,im_branch2,residual1,residual2\n";
  for (std::size_t i = 0; i < track.grid.size(); ++i) {
    const Complex b1 = track.branch1(i), b2 = track.branch2(i);
    put(out, track.grid[i]);
    for (double x : {b1.real(), b1.imag(), b2.real(), b2.imag(), track.residual1[i],
                     track.residual2[i]}) {
      out << ',';
      put(out, x);
    }
    out << '\n';
  }
}

std::vector<SweepRow> sweep(const MatrixFamily& family, const std::vector<double>& grid) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double s : grid) {
    SweepRow row{s, eigenvalues(family.at(s))};
    std::sort(row.eigenvalues.begin(), row.eigenvalues.end(), [](Complex a, Complex b) {
      return a.imag() != b.imag() ? a.imag() > b.imag() : a.real() < b.real();
    });
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "s";
  for (int k = 1; k <= 4; ++k) out << ",re" << k << ",im" << k;
  for (int k = 1; k <= 4; ++k) out << ",mod" << k;
  out << '\n';
  for (const SweepRow& row : rows) {
    put(out, row.s);
    for (const Complex& z : row.eigenvalues) {
      out << ',';
      put(out, z.real());
      out << ',';
      put(out, z.imag());
    }
    for (const Complex& z : row.eigenvalues) {
      out << ',';
      put(out, std::abs(z));
    }
    out << '\n';
  }
}

}  // namespace krein
