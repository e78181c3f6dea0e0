// Command-line front end. Talks to the core exclusively through the shared
// library's C interface.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rispeb.h"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitDegenerate = 3;

int exit_code_for(rispeb_status status) {
  if (status == RISPEB_OK) return 0;
  if (status == RISPEB_ERR_DEGENERATE) return kExitDegenerate;
  return kExitValidation;
}

int fail(rispeb_status status) {
  std::fprintf(stderr, "error: %s\n", rispeb_last_error());
  return exit_code_for(status);
}

struct ScenarioHandle {
  rispeb_scenario* ptr = nullptr;
  ~ScenarioHandle() { rispeb_scenario_free(ptr); }
};

struct ExperimentHandle {
  rispeb_experiment* ptr = nullptr;
  ~ExperimentHandle() { rispeb_experiment_free(ptr); }
};

struct ReportHandle {
  rispeb_report* ptr = nullptr;
  ~ReportHandle() { rispeb_report_free(ptr); }
};

struct CommonOptions {
  std::string scenario = "default";
  std::uint64_t seed = 1;
  int num_seeds = 1;
  std::string axis;
  std::vector<double> values;
  int bits = 2;
  std::string out = "-";
  std::string format = "csv";
  std::string grid = "40x25";
  double plane_z = 1.0;
  std::string budget = "default";
  std::string profile = "coherent-max";
  bool repro = false;
  bool quiet = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--scenario", opts.scenario,
                  "Scenario file path or preset (default, scenarioB-a, scenarioB-b)");
  cmd->add_option("--seed", opts.seed, "Root RNG seed");
  cmd->add_option("--seeds", opts.num_seeds, "Number of consecutive seeds starting at --seed")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--bits", opts.bits, "Phase-shift control bits for discrete methods")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts.out, "Output path ('-' for stdout)");
  cmd->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--budget", opts.budget, "Compute budget preset")
      ->check(CLI::IsMember({"quick", "default", "paper"}));
  cmd->add_flag("--repro", opts.repro, "Zero the wall_ms column for byte-stable output");
  cmd->add_flag("--quiet", opts.quiet, "Suppress per-cell progress log");
}

bool parse_grid(const std::string& text, int& w, int& h) {
  const std::size_t x = text.find('x');
  if (x == std::string::npos) return false;
  try {
    w = std::stoi(text.substr(0, x));
    h = std::stoi(text.substr(x + 1));
  } catch (const std::exception&) {
    return false;
  }
  return w >= 2 && h >= 2;
}

bool is_preset(const std::string& name) {
  return name == "default" || name == "scenarioB-a" || name == "scenarioB-b";
}

int run_command(const std::string& mode, const CommonOptions& opts) {
  ScenarioHandle scenario;
  rispeb_status status = is_preset(opts.scenario)
                             ? rispeb_scenario_preset(opts.scenario.c_str(), &scenario.ptr)
                             : rispeb_scenario_load(opts.scenario.c_str(), &scenario.ptr);
  if (status != RISPEB_OK) return fail(status);

  ExperimentHandle experiment;
  if ((status = rispeb_experiment_new(&experiment.ptr)) != RISPEB_OK) return fail(status);
  if ((status = rispeb_experiment_set_mode(experiment.ptr, mode.c_str())) != RISPEB_OK)
    return fail(status);

  if (!opts.axis.empty() || !opts.values.empty()) {
    if ((status = rispeb_experiment_set_axis(experiment.ptr, opts.axis.c_str(),
                                             opts.values.data(), opts.values.size())) != RISPEB_OK)
      return fail(status);
  }

  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < opts.num_seeds; ++k) seeds.push_back(opts.seed + static_cast<std::uint64_t>(k));
  if ((status = rispeb_experiment_set_seeds(experiment.ptr, seeds.data(), seeds.size())) !=
      RISPEB_OK)
    return fail(status);

  if ((status = rispeb_experiment_set_bits(experiment.ptr, opts.bits)) != RISPEB_OK)
    return fail(status);
  if ((status = rispeb_experiment_set_budget(experiment.ptr, opts.budget.c_str())) != RISPEB_OK)
    return fail(status);
  if ((status = rispeb_experiment_set_eval_profile(experiment.ptr, opts.profile.c_str())) !=
      RISPEB_OK)
    return fail(status);
  if ((status = rispeb_experiment_set_repro_output(experiment.ptr, opts.repro ? 1 : 0)) !=
      RISPEB_OK)
    return fail(status);
  if ((status = rispeb_experiment_set_quiet(experiment.ptr, opts.quiet ? 1 : 0)) != RISPEB_OK)
    return fail(status);

  int grid_w = 40, grid_h = 25;
  if (!parse_grid(opts.grid, grid_w, grid_h)) {
    std::fprintf(stderr, "error: --grid must look like 40x25 with sides >= 2\n");
    return kExitValidation;
  }
  if ((status = rispeb_experiment_set_grid(experiment.ptr, grid_w, grid_h)) != RISPEB_OK)
    return fail(status);
  if ((status = rispeb_experiment_set_plane_z(experiment.ptr, opts.plane_z)) != RISPEB_OK)
    return fail(status);

  if (is_preset(opts.scenario)) {
    // Presets live in the reference 8 x 5 x 4 m room; the box drives the
    // beam-sweep azimuth cover and the heatmap extent.
    const double room_min[3] = {0, 0, 0};
    const double room_max[3] = {8, 5, 4};
    if ((status = rispeb_experiment_set_room_box(experiment.ptr, room_min, room_max)) != RISPEB_OK)
      return fail(status);
  }

  ReportHandle report;
  if ((status = rispeb_experiment_run(experiment.ptr, scenario.ptr, &report.ptr)) != RISPEB_OK)
    return fail(status);
  if ((status = rispeb_report_emit(report.ptr, opts.format.c_str(), opts.out.c_str())) !=
      RISPEB_OK)
    return fail(status);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positioning error-bound simulator and phase-shift optimizer for "
               "reflective-surface-assisted millimeter-wave scenes"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string mode;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate the bound for a fixed phase profile");
  eval->add_option("--profile", opts.profile, "Schedule profile to evaluate")
      ->check(CLI::IsMember({"coherent-max", "ebs", "random"}));

  CLI::App* opt_cont =
      app.add_subcommand("opt-cont", "Optimize continuous phase shifts (manifold descent)");
  CLI::App* opt_disc =
      app.add_subcommand("opt-disc", "Optimize discrete phase shifts (grey wolf search)");

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep an axis and report every method");
  sweep->add_option("--axis", opts.axis,
                    "Sweep axis (power-dbm, measurements, elements-per-side, bits, ris-count)")
      ->required();
  sweep->add_option("--values", opts.values, "Comma-separated axis values")
      ->required()
      ->delimiter(',');

  CLI::App* heatmap = app.add_subcommand("heatmap", "Optimized bound over a UE grid");
  heatmap->add_option("--grid", opts.grid, "Heatmap grid as WxH");
  heatmap->add_option("--plane-z", opts.plane_z, "Height of the UE plane in meters");
  heatmap->add_option("--axis", opts.axis, "Optional: ris-count to emit one map per panel count");
  heatmap->add_option("--values", opts.values, "Axis values for --axis")->delimiter(',');

  for (CLI::App* cmd : {eval, opt_cont, opt_disc, sweep, heatmap}) add_common_flags(cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  if (eval->parsed()) mode = "eval";
  if (opt_cont->parsed()) mode = "opt-cont";
  if (opt_disc->parsed()) mode = "opt-disc";
  if (sweep->parsed()) mode = "sweep";
  if (heatmap->parsed()) mode = "heatmap";

  return run_command(mode, opts);
}
