#include "core/runner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include "core/baseline.hpp"
#include "core/errors.hpp"
#include "core/units.hpp"

namespace rispeb {

namespace {

std::mutex g_log_mutex;

void log_cell(bool quiet, const std::string& line) {
  if (quiet) return;
  std::lock_guard<std::mutex> lock(g_log_mutex);
  std::cerr << line << "\n";
}

struct Cell {
  Scenario scenario;
  std::string method;
  std::string axis;
  double value = 0.0;
  std::uint64_t seed = 0;
};

double now_ms(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Mode mode_from_string(const std::string& name) {
  if (name == "eval") return Mode::Eval;
  if (name == "opt-cont") return Mode::OptimizeContinuous;
  if (name == "opt-disc") return Mode::OptimizeDiscrete;
  if (name == "sweep") return Mode::Sweep;
  if (name == "heatmap") return Mode::Heatmap;
  throw InvalidArgument("unknown mode '" + name + "'");
}

Budget budget_preset(const std::string& name) {
  Budget b;
  b.name = name;
  if (name == "paper" || name == "default") {
    b.manifold = manifold::Params{};  // eps 1e-6, cap 2000, Armijo 1e5/0.5/0.1/200
    b.gwo = gwo::Params{};            // T = 1000, M = 100
    b.heatmap_cell_iterations = name == "paper" ? 400 : 150;
    return b;
  }
  if (name == "quick") {
    b.manifold.max_iterations = 200;
    b.gwo.iterations = 100;
    b.gwo.wolves = 24;
    b.heatmap_cell_iterations = 40;
    return b;
  }
  throw InvalidArgument("unknown budget preset '" + name + "'");
}

RisPanel standard_ris3() {
  RisPanel p;
  p.position = {0, 1, 3};
  p.e_x = {0, -1, 0};
  p.e_y = {0, 0, 1};
  p.e_z = {1, 0, 0};
  return p;
}

RisPanel standard_ris4() {
  RisPanel p;
  p.position = {8, 4, 2};
  p.e_x = {0, -1, 0};
  p.e_y = {0, 0, 1};
  p.e_z = {-1, 0, 0};
  return p;
}

bool is_preset_name(const std::string& name) {
  return name == "default" || name == "scenarioB-a" || name == "scenarioB-b";
}

Scenario preset_scenario(const std::string& name) {
  if (name == "default") return default_scenario();
  if (name == "scenarioB-a" || name == "scenarioB-b") {
    // Panel 1 plus a third panel on the same wall; the two variants differ
    // in the third panel's published position.
    Scenario s = default_scenario();
    RisPanel third = standard_ris3();
    third.position = name == "scenarioB-a" ? Eigen::Vector3d{0, 2, 3} : Eigen::Vector3d{0, 1, 3};
    s.ris = {s.ris[0], third};
    return s;
  }
  throw InvalidArgument("unknown scenario preset '" + name + "'");
}

Scenario with_power_dbm(Scenario s, double dbm) {
  s.ap.transmit_power_mw = dbm_to_mw(dbm);
  return s;
}

Scenario with_measurements(Scenario s, int n) {
  if (n < 1) throw InvalidArgument("measurement count must be >= 1");
  s.num_measurements = n;
  return s;
}

Scenario with_elements_per_side(Scenario s, int k) {
  if (k < 1) throw InvalidArgument("elements per side must be >= 1");
  for (auto& p : s.ris) {
    p.rows = k;
    p.cols = k;
  }
  return s;
}

Scenario with_ris_count(Scenario s, int count) {
  if (count < 1) throw InvalidArgument("panel count must be >= 1");
  std::vector<RisPanel> pool = s.ris;
  if (static_cast<int>(pool.size()) < count) pool.push_back(standard_ris3());
  if (static_cast<int>(pool.size()) < count) pool.push_back(standard_ris4());
  if (static_cast<int>(pool.size()) < count)
    throw InvalidArgument("panel-count sweep supports at most " + std::to_string(pool.size()) +
                          " panels for this scenario");
  pool.resize(count);
  s.ris = std::move(pool);
  return s;
}

Scenario with_ue_position(Scenario s, const Eigen::Vector3d& p) {
  s.ue_position = p;
  return s;
}

PhaseSchedule default_ebs_schedule(const ExperimentSpec& spec, const Scenario& s) {
  std::vector<SweepRegion> regions;
  regions.reserve(s.ris.size());
  for (const auto& panel : s.ris) {
    if (spec.room_min && spec.room_max)
      regions.push_back(room_interior_region(panel, *spec.room_min, *spec.room_max));
    else
      regions.push_back(SweepRegion::front_hemisphere());
  }
  return ebs_schedule(s, regions);
}

namespace {

Scenario apply_axis(const Scenario& base, const std::string& axis, double value) {
  if (axis == "power-dbm") return with_power_dbm(base, value);
  if (axis == "measurements") return with_measurements(base, static_cast<int>(std::llround(value)));
  if (axis == "elements-per-side")
    return with_elements_per_side(base, static_cast<int>(std::llround(value)));
  if (axis == "bits") return base;  // bits apply to the method, not the scene
  if (axis == "ris-count") return with_ris_count(base, static_cast<int>(std::llround(value)));
  throw InvalidArgument("unknown axis '" + axis + "'");
}

bool axis_is_discrete(const std::string& axis) { return axis == "bits"; }

// Evaluates one cell. The method string selects the algorithm; `bits`
// applies to the discrete methods only.
ReportRow run_cell(const ExperimentSpec& spec, const Budget& budget, const Cell& cell, int bits,
                   int manifold_iteration_cap) {
  const auto t0 = std::chrono::steady_clock::now();
  Scenario s = cell.scenario;
  s.rng_seed = cell.seed;

  ReportRow row;
  row.scenario = scenario_fingerprint(s);
  row.method = cell.method;
  row.axis = cell.axis;
  row.value = cell.value;
  row.seed = cell.seed;

  const FimOptions lenient{.allow_degenerate_panels = true};
  if (cell.method == "CPSOA-RM") {
    manifold::Params params = budget.manifold;
    if (manifold_iteration_cap > 0) params.max_iterations = manifold_iteration_cap;
    const OptimizerReport r = manifold::optimize(s, params, std::nullopt, lenient);
    row.peb_m = r.final_peb;
    row.iters = r.iterations;
  } else if (cell.method == "DPSOA-I-GWO") {
    gwo::Params params = budget.gwo;
    params.bits = bits;
    const OptimizerReport r = gwo::optimize(s, params, lenient);
    row.peb_m = r.final_peb;
    row.iters = r.iterations;
  } else if (cell.method == "EBS") {
    row.peb_m = position_fim(s, default_ebs_schedule(spec, s), lenient).peb;
  } else if (cell.method == "discrete-EBS") {
    row.peb_m = position_fim(s, quantize_schedule(default_ebs_schedule(spec, s), bits), lenient).peb;
  } else if (cell.method == "random") {
    RngStream rng = RngStream::derive(s.rng_seed, "random-profile");
    PhaseSchedule sched = PhaseSchedule::random(s, rng);
    if (axis_is_discrete(cell.axis)) sched = quantize_schedule(sched, bits);
    row.peb_m = position_fim(s, sched, lenient).peb;
  } else if (cell.method == "coherent-max") {
    row.peb_m = position_fim(s, PhaseSchedule::coherent_max(s), lenient).peb;
  } else {
    throw InvalidArgument("unknown method '" + cell.method + "'");
  }

  row.wall_ms = spec.zero_wall_ms ? 0.0 : now_ms(t0);
  return row;
}

std::vector<ReportRow> run_cells(const ExperimentSpec& spec, const Budget& budget,
                                 const std::vector<Cell>& cells, int bits,
                                 int manifold_iteration_cap) {
  std::vector<ReportRow> rows(cells.size());
  std::vector<std::string> failures(cells.size());
  std::atomic<std::size_t> next{0};

  const unsigned pool = std::max(1u, std::min(std::thread::hardware_concurrency(),
                                              static_cast<unsigned>(cells.size())));
  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      try {
        rows[k] = run_cell(spec, budget, cells[k], bits, manifold_iteration_cap);
        log_cell(spec.quiet, "cell " + cells[k].axis + "=" + format_float9(cells[k].value) +
                                 " seed=" + std::to_string(cells[k].seed) + " method=" +
                                 cells[k].method + " peb=" + format_float9(rows[k].peb_m));
      } catch (const DegenerateGeometry& e) {
        rows[k] = ReportRow{scenario_fingerprint(cells[k].scenario), cells[k].method,
                            cells[k].axis, cells[k].value,
                            std::numeric_limits<double>::infinity(), 0, 0.0, cells[k].seed};
        log_cell(spec.quiet, std::string("cell degenerate: ") + e.what());
      } catch (const std::exception& e) {
        failures[k] = e.what();
      }
    }
  };

  std::vector<std::thread> threads;
  for (unsigned k = 1; k < pool; ++k) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();

  for (const auto& f : failures)
    if (!f.empty()) throw Error(f);

  bool any_finite = false;
  for (const auto& r : rows) any_finite = any_finite || std::isfinite(r.peb_m);
  if (!rows.empty() && !any_finite)
    throw DegenerateGeometry("every cell of the experiment is degenerate");
  return rows;
}

std::vector<std::string> sweep_methods(const std::string& axis) {
  if (axis_is_discrete(axis)) return {"DPSOA-I-GWO", "discrete-EBS", "random"};
  return {"CPSOA-RM", "EBS", "random"};
}

}  // namespace

std::vector<ReportRow> run(const ExperimentSpec& spec) {
  validate_scenario(spec.scenario);
  const Budget budget = budget_preset(spec.budget);
  if (spec.seeds.empty()) throw InvalidArgument("at least one seed required");

  switch (spec.mode) {
    case Mode::Eval: {
      std::vector<Cell> cells;
      for (const std::uint64_t seed : spec.seeds)
        cells.push_back({spec.scenario, spec.eval_profile, "none", 0.0, seed});
      return run_cells(spec, budget, cells, spec.bits, 0);
    }
    case Mode::OptimizeContinuous: {
      std::vector<Cell> cells;
      for (const std::uint64_t seed : spec.seeds)
        cells.push_back({spec.scenario, "CPSOA-RM", "none", 0.0, seed});
      return run_cells(spec, budget, cells, spec.bits, 0);
    }
    case Mode::OptimizeDiscrete: {
      std::vector<Cell> cells;
      for (const std::uint64_t seed : spec.seeds)
        cells.push_back({spec.scenario, "DPSOA-I-GWO", "none", 0.0, seed});
      return run_cells(spec, budget, cells, spec.bits, 0);
    }
    case Mode::Sweep: {
      if (spec.values.empty()) throw InvalidArgument("sweep needs at least one axis value");
      if (axis_is_discrete(spec.axis)) {
        // On the bits axis the value is the bit count of the cell itself.
        std::vector<ReportRow> rows;
        for (const double value : spec.values) {
          const int b = static_cast<int>(std::llround(value));
          if (b < 1) throw InvalidArgument("bits axis values must be >= 1");
          std::vector<Cell> cells;
          for (const std::uint64_t seed : spec.seeds)
            for (const std::string& method : sweep_methods(spec.axis))
              cells.push_back({spec.scenario, method, spec.axis, value, seed});
          auto part = run_cells(spec, budget, cells, b, 0);
          rows.insert(rows.end(), part.begin(), part.end());
        }
        return rows;
      }
      std::vector<Cell> cells;
      for (const double value : spec.values) {
        const Scenario s = apply_axis(spec.scenario, spec.axis, value);
        for (const std::uint64_t seed : spec.seeds)
          for (const std::string& method : sweep_methods(spec.axis))
            cells.push_back({s, method, spec.axis, value, seed});
      }
      return run_cells(spec, budget, cells, spec.bits, 0);
    }
    case Mode::Heatmap: {
      if (spec.grid_w < 2 || spec.grid_h < 2)
        throw InvalidArgument("heatmap grid must be at least 2x2");
      Eigen::Vector3d lo{0, 0, 0}, hi{8, 5, 4};
      if (spec.room_min && spec.room_max) {
        lo = *spec.room_min;
        hi = *spec.room_max;
      }
      std::vector<double> ris_counts = spec.values;
      const bool sweep_ris = spec.axis == "ris-count" && !ris_counts.empty();
      if (!sweep_ris) ris_counts = {static_cast<double>(spec.scenario.num_panels())};

      std::vector<Cell> cells;
      for (const double count : ris_counts) {
        const Scenario base =
            sweep_ris ? with_ris_count(spec.scenario, static_cast<int>(std::llround(count)))
                      : spec.scenario;
        for (int cy = 0; cy < spec.grid_h; ++cy)
          for (int cx = 0; cx < spec.grid_w; ++cx) {
            const double x = lo.x() + (hi.x() - lo.x()) * (cx + 0.5) / spec.grid_w;
            const double y = lo.y() + (hi.y() - lo.y()) * (cy + 0.5) / spec.grid_h;
            const Scenario s = with_ue_position(base, {x, y, spec.plane_z_m});
            for (const std::uint64_t seed : spec.seeds)
              cells.push_back(
                  {s, "CPSOA-RM", "cell", static_cast<double>(cy * spec.grid_w + cx), seed});
          }
      }
      return run_cells(spec, budget, cells, spec.bits, budget.heatmap_cell_iterations);
    }
  }
  throw InvalidArgument("unhandled mode");
}

}  // namespace rispeb
