#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krein/curve.hpp"
#include "krein/matrix_core.hpp"
#include "krein/spectral.hpp"

namespace krein {

/// Parameter grid {min, max, count, log}. Defaults: 16 log-spaced points in
/// [1e-7, 1e-3].
struct GridSpec {
  double min = 1e-7;
  double max = 1e-3;
  int count = 16;
  bool log = true;

  /// Throws PreconditionError unless 0 < min < max and count >= 4.
  void validate() const;
  std::vector<double> points() const;
};

/// Parses "min,max,count[,log|lin]" (the CLI --grid syntax). Throws InputError.
GridSpec parse_grid(const std::string& text);

struct Tolerances {
  double cluster = 1e-5;     // eigenvalue cluster spread
  double circle = 1e-8;      // distance of lambda0 from the unit circle
  double symplectic = 1e-8;  // flow drift flag
  double degenerate = 1e-10; // |<A eta1, eta1>| hypothesis threshold
  int steps_per_point = 10000;  // RK4 steps per t-grid point
  int eps_steps = 2000;         // RK4 steps over [0, T] per eps-grid point
};

struct GeneratorSpec {
  double theta0 = 0.0;
  RealMat2 c{};
};

struct Scenario {
  std::string name;
  /// Set when gamma0 came from a generator rather than an explicit matrix.
  std::optional<GeneratorSpec> generator;
  ComplexMat4 gamma0;
  /// Curve source texts keyed by 0-based (row, col).
  std::map<std::pair<int, int>, std::string> curve_sources;
  SymmetricCurve curve;
  std::optional<double> T;
  GridSpec t_grid;
  GridSpec eps_grid;
  Tolerances tolerances;
};

/// Reads and validates a scenario file. Throws InputError (file missing or
/// not JSON), SchemaError (JSON pointer to the bad node), ParseError and
/// SymmetryConflictError for curve entries.
Scenario load_scenario(const std::string& path);

/// Same, from JSON text.
Scenario parse_scenario(const std::string& json_text);

}  // namespace krein
