#include "bhcone/cli.hpp"

#include "bhcone/config.hpp"
#include "bhcone/experiments.hpp"
#include "bhcone/report.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

namespace bhcone {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Bose-Hubbard light-cone verification harness"};
  std::string config_path;
  std::vector<std::string> only;
  std::string out_dir;
  long long seed = -1;
  int verbosity = 0;
  bool no_svg = false;
  app.add_option("config", config_path, "INI config file")->required();
  app.add_option("-e,--experiment", only, "run only these experiments (repeatable or comma separated)")
      ->delimiter(',');
  app.add_option("-o,--out", out_dir, "output directory (overrides [output] dir)");
  app.add_option("-s,--seed", seed, "RNG seed override")->check(CLI::NonNegativeNumber);
  app.add_flag("-v,--verbose", verbosity, "print check details (repeat for parameters)");
  app.add_flag("--no-svg", no_svg, "skip SVG plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitPass : kExitConfigError;
  }

  ExperimentConfig config;
  try {
    config = load_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    if (no_svg) config.svg = false;
    if (!only.empty()) {
      config.run = only;
      validate(config);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  std::vector<ExperimentReport> reports;
  for (const auto& name : config.run) {
    try {
      reports.push_back(run_experiment(name, config));
    } catch (const ConfigError& e) {
      err << name << ": config error: " << e.what() << '\n';
      return kExitConfigError;
    } catch (const std::logic_error& e) {
      // precondition violations found while building the experiment
      err << name << ": validation error: " << e.what() << '\n';
      return kExitConfigError;
    } catch (const std::exception& e) {
      err << name << ": failed: " << e.what() << '\n';
      ExperimentReport failed;
      failed.name = name;
      failed.checks.push_back({"completed", false, e.what()});
      reports.push_back(failed);
      continue;
    }
    const ExperimentReport& r = reports.back();
    write_csv(r, config.out_dir);
    if (config.svg) write_svg(r, config.out_dir);
    out << (r.pass() ? "PASS " : "FAIL ") << r.name;
    if (verbosity > 0) out << "  (" << r.seconds << " s)";
    out << '\n';
    for (const auto& c : r.checks)
      if (verbosity > 0 || !c.pass) out << "    " << (c.pass ? "ok   " : "FAIL ") << c.name << ": " << c.detail << '\n';
    if (verbosity > 1)
      for (const auto& [k, v] : r.parameters) out << "    param " << k << " = " << v << '\n';
  }
  const std::string summary = write_summary(reports, config, config.out_dir);
  bool all = true;
  for (const auto& r : reports) all = all && r.pass();
  out << (all ? "all experiments passed" : "some checks failed") << "; summary in " << summary << '\n';
  return all ? kExitPass : kExitFailure;
}

}  // namespace bhcone
