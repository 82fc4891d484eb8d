#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "krein/analysis.hpp"
#include "krein/verify.hpp"

namespace krein {

/// Shortest text that round-trips to the same double (at most 17 significant
/// digits), locale independent.
std::string format_double(double x);

/// Pretty-printed JSON documents.
std::string analysis_json(const Scenario& s, const Analysis& a);
std::string oracle_json(const Scenario& s, const OracleReport& r);
std::string classify_json(const Scenario& s, const Analysis& a);

/// Columns: s, re/im of both branches, both residuals.
void write_track_csv(std::ostream& out, const BranchTrack& track);

/// Eigenvalues of the family over a grid; each row sorted by decreasing
/// imaginary part, then by real part.
struct SweepRow {
  double s = 0.0;
  std::array<Complex, 4> eigenvalues{};
};
std::vector<SweepRow> sweep(const MatrixFamily& family, const std::vector<double>& grid);

/// Columns: s, re/im of the four eigenvalues, their moduli.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace krein
