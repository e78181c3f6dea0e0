#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/gwo_opt.hpp"
#include "core/manifold_opt.hpp"
#include "core/report.hpp"
#include "core/scenario.hpp"

namespace rispeb {

enum class Mode { Eval, OptimizeContinuous, OptimizeDiscrete, Sweep, Heatmap };
Mode mode_from_string(const std::string& name);

// Compute budgets. "paper" runs the reference optimizer settings; "default"
// matches it except for a lighter per-heatmap-cell budget; "quick" trims
// everything for smoke runs. Values are listed in the README.
struct Budget {
  std::string name;
  manifold::Params manifold;
  gwo::Params gwo;
  int heatmap_cell_iterations = 150;
};
Budget budget_preset(const std::string& name);

// Named scene presets: "default" (reference two-panel room), "scenarioB-a"
// and "scenarioB-b" (panel 1 plus a same-wall third panel at [0,2,3] resp.
// [0,1,3]).
Scenario preset_scenario(const std::string& name);
bool is_preset_name(const std::string& name);

// Standard extra panels appended by panel-count sweeps.
RisPanel standard_ris3();  // [0,1,3], oriented like panel 1
RisPanel standard_ris4();  // [8,4,2], oriented like panel 2

// Axis appliers used by sweeps.
Scenario with_power_dbm(Scenario s, double dbm);
Scenario with_measurements(Scenario s, int n);
Scenario with_elements_per_side(Scenario s, int k);
Scenario with_ris_count(Scenario s, int count);
Scenario with_ue_position(Scenario s, const Eigen::Vector3d& p);

struct ExperimentSpec {
  Scenario scenario = default_scenario();
  Mode mode = Mode::Eval;
  std::string axis;                 // power-dbm | measurements | elements-per-side | bits | ris-count
  std::vector<double> values;
  std::vector<std::uint64_t> seeds = {1};
  int bits = 2;
  std::string eval_profile = "coherent-max";  // coherent-max | ebs | random
  int grid_w = 40;
  int grid_h = 25;
  double plane_z_m = 1.0;
  std::string budget = "default";
  bool zero_wall_ms = false;  // reproducible output: report wall_ms as 0
  bool quiet = false;         // suppress the per-cell log line
  // Room bounding box; drives the beam-sweep azimuth cover and the heatmap
  // extent. Presets carry the reference 8 x 5 x 4 m room; scenarios loaded
  // from files fall back to the full front hemisphere and an entity
  // bounding box.
  std::optional<Eigen::Vector3d> room_min;
  std::optional<Eigen::Vector3d> room_max;
};

// Executes every (axis value x seed x method) cell of the spec on a small
// worker pool; rows come back in deterministic cell order regardless of
// scheduling. Throws DegenerateGeometry when no cell has a usable path.
std::vector<ReportRow> run(const ExperimentSpec& spec);

// Beam-sweep schedule with the spec's default region policy.
PhaseSchedule default_ebs_schedule(const ExperimentSpec& spec, const Scenario& s);

}  // namespace rispeb
