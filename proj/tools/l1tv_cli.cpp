// Batch front-end: scenario JSON in, report JSON + CSV out.
//
//   l1tv <solve|verify|norms|classify|converge> --scenario s.json
//        [--out DIR] [--grid N] [--policy minimal|upper] [--tol X]
//
// Exit codes: 0 ok, 1 usage/schema/I-O, 2 inapplicable datum, 3 infeasible
// field, 4 nonexistence regime, 5 verification failure.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "l1tv/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"radial 1-Laplacian constructor and verifier"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir, policy;
  int grid = 0;
  double tol = -1.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", scenario_path, "scenario JSON file")
        ->required();
    cmd->add_option("--out", out_dir, "output directory (default: scenario's)");
    cmd->add_option("--grid", grid, "solution grid points");
    cmd->add_option("--policy", policy, "jump selection: minimal|upper");
    cmd->add_option("--tol", tol, "verification threshold");
  };
  for (const char* name :
       {"solve", "verify", "norms", "classify", "converge"})
    add_common(app.add_subcommand(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? l1tv::kExitUsage : l1tv::kExitOk;
  }

  try {
    l1tv::Scenario s = l1tv::load_scenario(scenario_path);
    const std::string sub = app.get_subcommands().front()->get_name();
    if (s.command != sub)
      throw l1tv::ScenarioError("scenario command '" + s.command +
                                "' does not match subcommand '" + sub + "'");
    if (!out_dir.empty()) s.out_dir = out_dir;
    if (grid > 0) s.grid = grid;
    if (tol >= 0) s.tol = tol;
    if (!policy.empty()) {
      if (policy == "minimal")
        s.policy = l1tv::Branch::Minimal;
      else if (policy == "upper")
        s.policy = l1tv::Branch::Upper;
      else
        throw l1tv::ScenarioError("--policy must be minimal or upper");
    }
    return l1tv::run_scenario(s);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return l1tv::kExitUsage;
  }
}
