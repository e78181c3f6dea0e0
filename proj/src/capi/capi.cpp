#include "rispeb.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "core/errors.hpp"
#include "core/report.hpp"
#include "core/runner.hpp"
#include "core/scenario.hpp"

namespace {

thread_local std::string g_last_error;

rispeb_status fail(rispeb_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
rispeb_status guarded(Fn&& fn) {
  using namespace rispeb;
  try {
    fn();
    return RISPEB_OK;
  } catch (const ParseError& e) {
    return fail(RISPEB_ERR_PARSE, e.what());
  } catch (const InvariantViolation& e) {
    return fail(RISPEB_ERR_INVARIANT, e.what());
  } catch (const DegenerateGeometry& e) {
    return fail(RISPEB_ERR_DEGENERATE, e.what());
  } catch (const DimensionMismatch& e) {
    return fail(RISPEB_ERR_DIMENSION, e.what());
  } catch (const IoError& e) {
    return fail(RISPEB_ERR_IO, e.what());
  } catch (const InvalidArgument& e) {
    return fail(RISPEB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(RISPEB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RISPEB_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct rispeb_scenario {
  rispeb::Scenario value;
};

struct rispeb_experiment {
  rispeb::ExperimentSpec spec;
};

struct rispeb_report {
  std::vector<rispeb::ReportRow> rows;
};

extern "C" {

const char* rispeb_version(void) { return "1.0.0"; }

const char* rispeb_last_error(void) { return g_last_error.c_str(); }

void rispeb_string_free(char* s) { delete[] s; }

rispeb_status rispeb_scenario_load(const char* path, rispeb_scenario** out) {
  if (!path || !out) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new rispeb_scenario{rispeb::load_scenario(path)}; });
}

rispeb_status rispeb_scenario_from_text(const char* text, rispeb_scenario** out) {
  if (!text || !out) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new rispeb_scenario{rispeb::parse_scenario_text(text)}; });
}

rispeb_status rispeb_scenario_preset(const char* name, rispeb_scenario** out) {
  if (!name || !out) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new rispeb_scenario{rispeb::preset_scenario(name)}; });
}

rispeb_status rispeb_scenario_save(const rispeb_scenario* s, const char* path) {
  if (!s || !path) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { rispeb::save_scenario_file(s->value, path); });
}

rispeb_status rispeb_scenario_to_text(const rispeb_scenario* s, char** out_text) {
  if (!s || !out_text) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out_text = copy_string(rispeb::save_scenario(s->value)); });
}

rispeb_status rispeb_scenario_fingerprint(const rispeb_scenario* s, char** out_text) {
  if (!s || !out_text) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out_text = copy_string(rispeb::scenario_fingerprint(s->value)); });
}

int rispeb_scenario_is_degenerate(const rispeb_scenario* s) {
  if (!s) return -1;
  return s->value.degenerate() ? 1 : 0;
}

void rispeb_scenario_free(rispeb_scenario* s) { delete s; }

rispeb_status rispeb_experiment_new(rispeb_experiment** out) {
  if (!out) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new rispeb_experiment{}; });
}

rispeb_status rispeb_experiment_set_mode(rispeb_experiment* e, const char* mode) {
  if (!e || !mode) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { e->spec.mode = rispeb::mode_from_string(mode); });
}

rispeb_status rispeb_experiment_set_axis(rispeb_experiment* e, const char* axis,
                                         const double* values, size_t count) {
  if (!e || !axis || (count > 0 && !values))
    return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    e->spec.axis = axis;
    e->spec.values.assign(values, values + count);
  });
}

rispeb_status rispeb_experiment_set_seeds(rispeb_experiment* e, const uint64_t* seeds,
                                          size_t count) {
  if (!e || !seeds || count == 0) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null or empty seeds");
  return guarded([&] { e->spec.seeds.assign(seeds, seeds + count); });
}

rispeb_status rispeb_experiment_set_bits(rispeb_experiment* e, int bits) {
  if (!e) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  if (bits < 1) return fail(RISPEB_ERR_INVALID_ARGUMENT, "bits must be >= 1");
  e->spec.bits = bits;
  return RISPEB_OK;
}

rispeb_status rispeb_experiment_set_budget(rispeb_experiment* e, const char* preset) {
  if (!e || !preset) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    rispeb::budget_preset(preset);  // validate the name now
    e->spec.budget = preset;
  });
}

rispeb_status rispeb_experiment_set_grid(rispeb_experiment* e, int width, int height) {
  if (!e) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  if (width < 2 || height < 2) return fail(RISPEB_ERR_INVALID_ARGUMENT, "grid must be >= 2x2");
  e->spec.grid_w = width;
  e->spec.grid_h = height;
  return RISPEB_OK;
}

rispeb_status rispeb_experiment_set_plane_z(rispeb_experiment* e, double z_m) {
  if (!e) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  e->spec.plane_z_m = z_m;
  return RISPEB_OK;
}

rispeb_status rispeb_experiment_set_eval_profile(rispeb_experiment* e, const char* profile) {
  if (!e || !profile) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  const std::string p = profile;
  if (p != "coherent-max" && p != "ebs" && p != "random")
    return fail(RISPEB_ERR_INVALID_ARGUMENT, "unknown eval profile '" + p + "'");
  e->spec.eval_profile = p;
  return RISPEB_OK;
}

rispeb_status rispeb_experiment_set_repro_output(rispeb_experiment* e, int enabled) {
  if (!e) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  e->spec.zero_wall_ms = enabled != 0;
  return RISPEB_OK;
}

rispeb_status rispeb_experiment_set_quiet(rispeb_experiment* e, int enabled) {
  if (!e) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  e->spec.quiet = enabled != 0;
  return RISPEB_OK;
}

rispeb_status rispeb_experiment_set_room_box(rispeb_experiment* e, const double min_m[3],
                                             const double max_m[3]) {
  if (!e || !min_m || !max_m) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  e->spec.room_min = Eigen::Vector3d(min_m[0], min_m[1], min_m[2]);
  e->spec.room_max = Eigen::Vector3d(max_m[0], max_m[1], max_m[2]);
  return RISPEB_OK;
}

void rispeb_experiment_free(rispeb_experiment* e) { delete e; }

rispeb_status rispeb_experiment_run(const rispeb_experiment* e, const rispeb_scenario* s,
                                    rispeb_report** out) {
  if (!e || !s || !out) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    rispeb::ExperimentSpec spec = e->spec;
    spec.scenario = s->value;
    *out = new rispeb_report{rispeb::run(spec)};
  });
}

size_t rispeb_report_row_count(const rispeb_report* r) { return r ? r->rows.size() : 0; }

rispeb_status rispeb_report_row(const rispeb_report* r, size_t index, rispeb_row_view* out) {
  if (!r || !out) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= r->rows.size()) return fail(RISPEB_ERR_INVALID_ARGUMENT, "row index out of range");
  const rispeb::ReportRow& row = r->rows[index];
  out->scenario = row.scenario.c_str();
  out->method = row.method.c_str();
  out->axis = row.axis.c_str();
  out->value = row.value;
  out->peb_m = row.peb_m;
  out->iters = row.iters;
  out->wall_ms = row.wall_ms;
  out->seed = row.seed;
  return RISPEB_OK;
}

rispeb_status rispeb_report_to_string(const rispeb_report* r, const char* format,
                                      char** out_text) {
  if (!r || !format || !out_text) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out_text = copy_string(rispeb::emit_report(r->rows, format)); });
}

rispeb_status rispeb_report_emit(const rispeb_report* r, const char* format, const char* path) {
  if (!r || !format || !path) return fail(RISPEB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { rispeb::emit_report_file(r->rows, format, path); });
}

void rispeb_report_free(rispeb_report* r) { delete r; }

}  // extern "C"
