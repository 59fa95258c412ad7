// strip-poisson: scenario runner and verification battery for the Poisson
// problem -Laplace u = f on the periodic strip (0,1) x R.
//
//   strip-poisson run <config.json> [--threads N] [--output DIR]
//   strip-poisson verify <suite>    [--threads N]
//
// Suites: table1, green, solver_equivalence, inequalities, constructive, all.
//
// Exit codes: 0 success, 1 verification failure, 2 config validation,
// 3 numerical guard, 4 I/O. Errors emit machine-readable JSON on stderr.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "strip_poisson/parallel.hpp"
#include "strip_poisson/scenario.hpp"
#include "strip_poisson/strip_poisson.hpp"

namespace {

void emit_error(const std::string& code, const std::string& message,
                const nlohmann::json& data = {}) {
  nlohmann::ordered_json e;
  e["error"]["code"] = code;
  e["error"]["message"] = message;
  if (!data.is_null() && !data.empty()) e["error"]["data"] = data;
  std::cerr << e.dump() << std::endl;
}

int run_command(const std::string& config_path, const std::string& output_override) {
  strip::ScenarioConfig cfg;
  try {
    cfg = strip::load_config(config_path);
  } catch (const strip::config_error& e) {
    emit_error("CONFIG_INVALID", e.what());
    return 2;
  }
  if (!output_override.empty()) cfg.output_dir = output_override;

  try {
    strip::run_scenario(cfg);
  } catch (const strip::moment_violation& e) {
    emit_error("MOMENT_VIOLATION", e.what(),
               {{"mass", e.mass}, {"dipole", e.dipole}, {"tol", e.tol}});
    return 3;
  } catch (const strip::cost_budget_error& e) {
    emit_error("COST_BUDGET", e.what());
    return 3;
  } catch (const strip::support_error& e) {
    emit_error("SUPPORT_VIOLATION", e.what());
    return 3;
  } catch (const strip::non_integrable_error& e) {
    emit_error("NON_INTEGRABLE", e.what());
    return 3;
  } catch (const strip::conditioning_error& e) {
    emit_error("ILL_CONDITIONED", e.what());
    return 3;
  } catch (const strip::singularity_error& e) {
    emit_error("SINGULARITY", e.what());
    return 3;
  } catch (const strip::table_format_error& e) {
    emit_error("IO_ERROR", e.what());
    return 4;
  } catch (const strip::config_error& e) {
    emit_error("CONFIG_INVALID", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    emit_error("CONFIG_INVALID", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("IO_ERROR", e.what());
    return 4;
  }
  return 0;
}

int verify_command(const std::string& suite) {
  std::vector<strip::CriterionResult> results;
  try {
    results = strip::run_suite(suite);
  } catch (const std::invalid_argument& e) {
    emit_error("CONFIG_INVALID", e.what());
    return 2;
  }
  bool all_pass = true;
  for (const auto& cr : results) {
    std::printf("[%s] criterion %d (%s)  —  %.1fs\n", cr.pass ? "PASS" : "FAIL", cr.number,
                cr.name.c_str(), cr.seconds);
    for (const auto& item : cr.items) {
      std::printf("    %-38s measured=%-14.6g threshold=%-12.6g %s%s%s\n", item.id.c_str(),
                  item.measured, item.threshold, item.pass ? "ok" : "VIOLATED",
                  item.note.empty() ? "" : "  : ", item.note.c_str());
    }
    all_pass = all_pass && cr.pass;
  }
  std::printf("%s\n", all_pass ? "verification suite passed" : "verification suite FAILED");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson solver and verification battery on the periodic strip"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "cap on worker threads (0 = hardware)");

  std::string config_path, output_override;
  CLI::App* run = app.add_subcommand("run", "run a scenario config");
  run->add_option("config", config_path, "scenario config (JSON)")->required();
  run->add_option("--output", output_override, "override the output directory");

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify
      ->add_option("suite", suite,
                   "table1 | green | solver_equivalence | inequalities | constructive | all")
      ->required();

  CLI11_PARSE(app, argc, argv);
  strip::set_max_threads(threads);

  if (run->parsed()) return run_command(config_path, output_override);
  return verify_command(suite);
}
