#include "krein_cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "krein/error.hpp"
#include "krein/report.hpp"
#include "krein/verify.hpp"

namespace krein::cli {
namespace {

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& fill) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path.string() + "'");
  fill(f);
  if (!f) throw InputError("failed writing '" + path.string() + "'");
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + dir + "': " + ec.message());
  return dir;
}

GridSpec grid_for(const Scenario& s, const Options& o, Mode mode) {
  if (o.grid) return *o.grid;
  return mode == Mode::t ? s.t_grid : s.eps_grid;
}

}  // namespace

int cmd_analyze(const Scenario& s, const Options& o, std::ostream& out, std::ostream&) {
  out << analysis_json(s, analyze(s, o.mode.value_or(Mode::t))) << '\n';
  return kOk;
}

int cmd_verify(const Scenario& s, const Options& o, std::ostream& out, std::ostream& err) {
  CompareOptions co;
  if (o.mode) {
    require_mode(s, *o.mode);
    co.run_t = *o.mode == Mode::t;
    co.run_eps = *o.mode == Mode::eps;
  }
  if (o.grid) {
    if (co.run_t) co.t_grid = o.grid;
    else co.eps_grid = o.grid;
  }
  const OracleReport report = compare(s, co);
  out << oracle_json(s, report) << '\n';

  if (o.out_dir) {
    const auto dir = prepare_out_dir(*o.out_dir);
    if (report.t)
      write_file(dir / "track_t.csv", [&](std::ostream& f) { write_track_csv(f, report.t->track); });
    if (report.eps)
      write_file(dir / "track_eps.csv",
                 [&](std::ostream& f) { write_track_csv(f, report.eps->track); });
  }

  for (const auto& [name, value] : report.relative_errors)
    if (!(value <= o.tol)) {
      err << "verify: " << name << " relative error " << format_double(value)
          << " exceeds tolerance " << format_double(o.tol) << '\n';
      return kToleranceFailure;
    }
  return kOk;
}

int cmd_sweep(const Scenario& s, const Options& o, std::ostream& out, std::ostream&) {
  const Mode mode = o.mode.value_or(Mode::t);
  const auto rows = sweep(family_for(s, mode), grid_for(s, o, mode).points());
  write_sweep_csv(out, rows);
  if (o.out_dir) {
    const auto dir = prepare_out_dir(*o.out_dir);
    write_file(dir / ("sweep_" + to_string(mode) + ".csv"),
               [&](std::ostream& f) { write_sweep_csv(f, rows); });
  }
  return kOk;
}

int cmd_classify(const Scenario& s, const Options& o, std::ostream& out, std::ostream&) {
  const Analysis a = analyze(s, o.mode.value_or(Mode::t));
  out << "verdict: " << to_string(a.verdict.verdict) << '\n'
      << "kappa: " << format_double(a.verdict.kappa) << '\n';
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bifurcation of a double Krein-indefinite multiplier: closed forms and oracle"};
  app.require_subcommand(1);

  std::string path, grid_text, mode_text, out_dir;
  Options opts;
  using Command = int (*)(const Scenario&, const Options&, std::ostream&, std::ostream&);
  Command chosen = nullptr;

  const std::vector<std::pair<std::string, std::pair<std::string, Command>>> commands = {
      {"analyze", {"Closed-form expansion coefficients and stability verdict (JSON)", cmd_analyze}},
      {"verify", {"Compare predictions with the eigenvalue-tracking oracle (JSON, CSV)", cmd_verify}},
      {"sweep", {"Eigenvalues over the parameter grid (CSV)", cmd_sweep}},
      {"classify", {"Stability verdict and kappa", cmd_classify}},
  };
  for (const auto& [name, info] : commands) {
    CLI::App* sub = app.add_subcommand(name, info.first);
    sub->add_option("scenario", path, "Scenario JSON file")->required();
    sub->add_option("--out", out_dir, "Directory for CSV output");
    sub->add_option("--tol", opts.tol, "Relative tolerance for verify")->check(CLI::PositiveNumber);
    sub->add_option("--grid", grid_text, "Grid override: min,max,count[,log|lin]");
    sub->add_option("--mode", mode_text, "Parameter: t or eps");
    sub->callback([&chosen, cmd = info.second] { chosen = cmd; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kInputError;
  }

  try {
    if (!grid_text.empty()) opts.grid = parse_grid(grid_text);
    if (!mode_text.empty()) opts.mode = parse_mode(mode_text);
    if (!out_dir.empty()) opts.out_dir = out_dir;
    const Scenario scenario = load_scenario(path);
    return chosen(scenario, opts, out, err);
  } catch (const HypothesisError& e) {
    err << "hypothesis violated: " << e.what() << '\n';
    return kHypothesisError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace krein::cli
