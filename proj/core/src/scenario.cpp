#include "krein/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "krein/error.hpp"

namespace krein {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& ptr, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw SchemaError(ptr + "/" + it.key(), "unknown key");
}

const json& require_object(const json& v, const std::string& ptr) {
  if (!v.is_object()) throw SchemaError(ptr, "expected an object");
  return v;
}

double number(const json& v, const std::string& ptr) {
  if (!v.is_number()) throw SchemaError(ptr, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(ptr, "expected a finite number");
  return x;
}

int integer(const json& v, const std::string& ptr) {
  if (!v.is_number_integer()) throw SchemaError(ptr, "expected an integer");
  return v.get<int>();
}

double positive(const json& v, const std::string& ptr) {
  const double x = number(v, ptr);
  if (!(x > 0.0)) throw SchemaError(ptr, "expected a positive number");
  return x;
}

int positive_int(const json& v, const std::string& ptr) {
  const int x = integer(v, ptr);
  if (x < 2) throw SchemaError(ptr, "expected an integer >= 2");
  return x;
}

GridSpec read_grid(const json& v, const std::string& ptr) {
  require_object(v, ptr);
  reject_unknown(v, ptr, {"min", "max", "count", "log"});
  GridSpec g;
  if (v.contains("min")) g.min = number(v["min"], ptr + "/min");
  if (v.contains("max")) g.max = number(v["max"], ptr + "/max");
  if (v.contains("count")) g.count = integer(v["count"], ptr + "/count");
  if (v.contains("log")) {
    if (!v["log"].is_boolean()) throw SchemaError(ptr + "/log", "expected a boolean");
    g.log = v["log"].get<bool>();
  }
  try {
    g.validate();
  } catch (const PreconditionError& e) {
    throw SchemaError(ptr, e.what());
  }
  return g;
}

template <std::size_t N>
std::array<std::array<double, N>, N> read_square(const json& v, const std::string& ptr) {
  if (!v.is_array() || v.size() != N)
    throw SchemaError(ptr, "expected a " + std::to_string(N) + "x" + std::to_string(N) + " array");
  std::array<std::array<double, N>, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    const std::string row_ptr = ptr + "/" + std::to_string(i);
    if (!v[i].is_array() || v[i].size() != N)
      throw SchemaError(row_ptr, "expected a row of " + std::to_string(N) + " numbers");
    for (std::size_t j = 0; j < N; ++j) out[i][j] = number(v[i][j], row_ptr + "/" + std::to_string(j));
  }
  return out;
}

void read_gamma0(const json& v, Scenario& s) {
  const std::string ptr = "/gamma0";
  require_object(v, ptr);
  reject_unknown(v, ptr, {"matrix", "generator"});
  const bool has_matrix = v.contains("matrix");
  const bool has_generator = v.contains("generator");
  if (has_matrix == has_generator)
    throw SchemaError(ptr, "exactly one of 'matrix' and 'generator' is required");

  if (has_matrix) {
    const auto m = read_square<4>(v["matrix"], ptr + "/matrix");
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        s.gamma0(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    if (!is_symplectic(s.gamma0, s.tolerances.symplectic))
      throw SchemaError(ptr + "/matrix", "matrix is not symplectic (defect " +
                                            std::to_string(symplectic_defect(s.gamma0)) + ")");
    return;
  }

  const std::string gptr = ptr + "/generator";
  const json& g = require_object(v["generator"], gptr);
  reject_unknown(g, gptr, {"theta0", "C"});
  if (!g.contains("theta0")) throw SchemaError(gptr + "/theta0", "missing required key");
  if (!g.contains("C")) throw SchemaError(gptr + "/C", "missing required key");
  GeneratorSpec spec;
  spec.theta0 = number(g["theta0"], gptr + "/theta0");
  spec.c = read_square<2>(g["C"], gptr + "/C");
  try {
    s.gamma0 = make_jordan_symplectic(spec.theta0, spec.c);
  } catch (const DegenerateAngleError& e) {
    throw SchemaError(gptr + "/theta0", e.what());
  } catch (const PreconditionError& e) {
    throw SchemaError(gptr + "/C", e.what());
  }
  s.generator = spec;
}

std::pair<int, int> parse_index(const std::string& key, const std::string& ptr) {
  const auto comma = key.find(',');
  auto digit = [&](std::size_t begin, std::size_t end) {
    int out = -1;
    const auto r = std::from_chars(key.data() + begin, key.data() + end, out);
    if (r.ec != std::errc{} || r.ptr != key.data() + end || out < 0 || out > 3)
      throw SchemaError(ptr, "entry key must be \"i,j\" with 0 <= i, j <= 3");
    return out;
  };
  if (comma == std::string::npos) throw SchemaError(ptr, "entry key must be \"i,j\"");
  return {digit(0, comma), digit(comma + 1, key.size())};
}

void read_curve(const json& v, Scenario& s) {
  const std::string ptr = "/curve";
  require_object(v, ptr);
  reject_unknown(v, ptr, {"entries"});
  if (!v.contains("entries")) throw SchemaError(ptr + "/entries", "missing required key");
  const json& entries = require_object(v["entries"], ptr + "/entries");
  for (auto it = entries.begin(); it != entries.end(); ++it) {
    const std::string eptr = ptr + "/entries/" + it.key();
    if (!it.value().is_string()) throw SchemaError(eptr, "expected an expression string");
    s.curve_sources[parse_index(it.key(), eptr)] = it.value().get<std::string>();
  }
  s.curve = SymmetricCurve::from_sources(s.curve_sources);
}

void read_tolerances(const json& v, Tolerances& t) {
  const std::string ptr = "/tolerances";
  require_object(v, ptr);
  reject_unknown(v, ptr,
                 {"cluster", "circle", "symplectic", "degenerate", "steps_per_point", "eps_steps"});
  if (v.contains("cluster")) t.cluster = positive(v["cluster"], ptr + "/cluster");
  if (v.contains("circle")) t.circle = positive(v["circle"], ptr + "/circle");
  if (v.contains("symplectic")) t.symplectic = positive(v["symplectic"], ptr + "/symplectic");
  if (v.contains("degenerate")) t.degenerate = positive(v["degenerate"], ptr + "/degenerate");
  if (v.contains("steps_per_point"))
    t.steps_per_point = positive_int(v["steps_per_point"], ptr + "/steps_per_point");
  if (v.contains("eps_steps")) t.eps_steps = positive_int(v["eps_steps"], ptr + "/eps_steps");
}

}  // namespace

void GridSpec::validate() const {
  if (!(min > 0.0) || !std::isfinite(max) || !(min < max))
    throw PreconditionError("grid bounds must satisfy 0 < min < max");
  if (count < 4) throw PreconditionError("grid count must be at least 4");
}

std::vector<double> GridSpec::points() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    out[static_cast<std::size_t>(i)] =
        log ? std::exp(std::log(min) + f * (std::log(max) - std::log(min))) : min + f * (max - min);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4)
    throw InputError("--grid expects min,max,count[,log|lin]");

  auto to_double = [&](const std::string& p) {
    double x = 0.0;
    const auto r = std::from_chars(p.data(), p.data() + p.size(), x);
    if (r.ec != std::errc{} || r.ptr != p.data() + p.size())
      throw InputError("--grid: '" + p + "' is not a number");
    return x;
  };
  GridSpec g;
  g.min = to_double(parts[0]);
  g.max = to_double(parts[1]);
  const auto r = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), g.count);
  if (r.ec != std::errc{} || r.ptr != parts[2].data() + parts[2].size())
    throw InputError("--grid: count must be an integer");
  if (parts.size() == 4) {
    if (parts[3] == "log" || parts[3] == "true") {
      g.log = true;
    } else if (parts[3] == "lin" || parts[3] == "false") {
      g.log = false;
    } else {
      throw InputError("--grid: spacing must be 'log' or 'lin'");
    }
  }
  try {
    g.validate();
  } catch (const PreconditionError& e) {
    throw InputError(std::string("--grid: ") + e.what());
  }
  return g;
}

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("", "scenario must be a JSON object");
  reject_unknown(doc, "", {"name", "gamma0", "curve", "T", "grids", "tolerances"});

  Scenario s;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw SchemaError("/name", "expected a string");
    s.name = doc["name"].get<std::string>();
  }
  if (doc.contains("tolerances")) read_tolerances(doc["tolerances"], s.tolerances);
  if (!doc.contains("gamma0")) throw SchemaError("/gamma0", "missing required key");
  read_gamma0(doc["gamma0"], s);
  if (!doc.contains("curve")) throw SchemaError("/curve", "missing required key");
  read_curve(doc["curve"], s);
  if (doc.contains("T")) s.T = positive(doc["T"], "/T");
  if (doc.contains("grids")) {
    const json& g = require_object(doc["grids"], "/grids");
    reject_unknown(g, "/grids", {"t", "eps"});
    if (g.contains("t")) s.t_grid = read_grid(g["t"], "/grids/t");
    if (g.contains("eps")) s.eps_grid = read_grid(g["eps"], "/grids/eps");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace krein
