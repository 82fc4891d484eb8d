#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "krein/analysis.hpp"
#include "krein/scenario.hpp"

namespace krein::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,       // I/O, schema, expression syntax, usage
  kHypothesisError = 2,  // degenerate or excluded mathematical cases
  kToleranceFailure = 3, // verify: an oracle comparison exceeded --tol
};

struct Options {
  std::optional<std::string> out_dir;
  double tol = 1e-3;
  std::optional<GridSpec> grid;
  std::optional<Mode> mode;
};

int cmd_analyze(const Scenario& s, const Options& o, std::ostream& out, std::ostream& err);
int cmd_verify(const Scenario& s, const Options& o, std::ostream& out, std::ostream& err);
int cmd_sweep(const Scenario& s, const Options& o, std::ostream& out, std::ostream& err);
int cmd_classify(const Scenario& s, const Options& o, std::ostream& out, std::ostream& err);

/// Full command line: `<command> <scenario.json> [options]` after argv[0].
/// Maps every library exception to its exit code and never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krein::cli
