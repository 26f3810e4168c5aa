#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "finsler/acceptance.hpp"
#include "finsler/errors.hpp"
#include "finsler/scenario.hpp"

namespace {

int run_scenario_command(const std::string& command, const std::string& scenario_path,
                         const std::string& out_path, double tol_override, long long seed_override,
                         const std::string& derivatives) {
  finsler::Scenario s = finsler::load_scenario(scenario_path);
  if (tol_override > 0) s.tol = tol_override;
  if (seed_override >= 0) s.seed = static_cast<uint64_t>(seed_override);
  if (derivatives == "fd") s.mode = finsler::DerivMode::finite_difference;
  if (derivatives == "exact") s.mode = finsler::DerivMode::exact;
  finsler::RunReport rep = finsler::run_command(command, s);
  std::string payload = rep.to_json();
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << payload << "\n";
  } else {
    std::cout << payload << "\n";
  }
  for (const auto& c : rep.checks)
    std::cerr << (c.pass ? "pass" : "FAIL") << "  " << c.name << " (max dev " << c.max_dev
              << ", tol " << c.tol << ")\n";
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finslerlab: conic Finsler metrics, hypersurface curvature and "
               "isoparametric checks"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, derivatives;
  double tol = -1.0;
  long long seed = -1;

  auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
    if (needs_scenario)
      cmd->add_option("--scenario", scenario_path, "scenario JSON path")->required();
    cmd->add_option("--out", out_path, "write the JSON report here (default: stdout)");
    cmd->add_option("--tol", tol, "override the scenario tolerance");
    cmd->add_option("--seed", seed, "override the scenario seed");
    cmd->add_option("--derivatives", derivatives, "derivative engine: exact | fd")
        ->check(CLI::IsMember({"exact", "fd"}));
  };

  CLI::App* validate = app.add_subcommand("validate-metric", "metric sanity suite");
  add_common(validate, true);
  CLI::App* surface = app.add_subcommand("surface-report", "shape operator over a sample grid");
  add_common(surface, true);
  CLI::App* iso = app.add_subcommand("isoparametric-check", "level-set constancy checks");
  add_common(iso, true);
  CLI::App* compare =
      app.add_subcommand("kropina-compare", "navigation vs base metric curvature comparison");
  add_common(compare, true);
  CLI::App* repro =
      app.add_subcommand("reproduce-paper", "run the bundled acceptance criteria");
  add_common(repro, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (repro->parsed()) {
      finsler::DerivMode mode = derivatives == "fd" ? finsler::DerivMode::finite_difference
                                                    : finsler::DerivMode::exact;
      finsler::AcceptanceSummary summary = finsler::reproduce_paper(mode, &std::cout);
      if (!out_path.empty()) {
        finsler::RunReport rep;
        rep.command = "reproduce-paper";
        rep.pass = summary.all_pass();
        rep.exit_code = rep.pass ? 0 : 1;
        for (const auto& c : summary.criteria) {
          finsler::CheckResult cr;
          cr.name = c.name;
          cr.pass = c.pass;
          cr.max_dev = c.max_dev;
          cr.tol = c.tol;
          cr.detail = (c.skipped ? std::string("SKIPPED: ") : std::string()) + c.detail;
          rep.checks.push_back(std::move(cr));
        }
        std::ofstream out(out_path);
        out << rep.to_json() << "\n";
      }
      return summary.all_pass() ? 0 : 1;
    }
    std::string command;
    for (const char* name : {"validate-metric", "surface-report", "isoparametric-check",
                             "kropina-compare"})
      if (app.get_subcommand(name)->parsed()) command = name;
    return run_scenario_command(command, scenario_path, out_path, tol, seed, derivatives);
  } catch (const finsler::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return finsler::is_config_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
