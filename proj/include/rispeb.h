/*
 * rispeb — multi-panel reflective-surface positioning bound toolkit.
 *
 * C89-compatible shared-library interface. All objects are opaque handles
 * created and destroyed by the library; every fallible call returns a
 * rispeb_status and leaves a human-readable message retrievable with
 * rispeb_last_error() (thread-local, valid until the next failing call on
 * the same thread).
 */
#ifndef RISPEB_H
#define RISPEB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RISPEB_API __declspec(dllexport)
#else
#define RISPEB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rispeb_status {
  RISPEB_OK = 0,
  RISPEB_ERR_PARSE = 1,
  RISPEB_ERR_INVARIANT = 2,
  RISPEB_ERR_DEGENERATE = 3,
  RISPEB_ERR_DIMENSION = 4,
  RISPEB_ERR_IO = 5,
  RISPEB_ERR_INVALID_ARGUMENT = 6,
  RISPEB_ERR_INTERNAL = 7
} rispeb_status;

typedef struct rispeb_scenario rispeb_scenario;
typedef struct rispeb_experiment rispeb_experiment;
typedef struct rispeb_report rispeb_report;

RISPEB_API const char* rispeb_version(void);
RISPEB_API const char* rispeb_last_error(void);
RISPEB_API void rispeb_string_free(char* s);

/* ---- scenarios ------------------------------------------------------- */

RISPEB_API rispeb_status rispeb_scenario_load(const char* path, rispeb_scenario** out);
RISPEB_API rispeb_status rispeb_scenario_from_text(const char* text, rispeb_scenario** out);
/* "default", "scenarioB-a", "scenarioB-b". */
RISPEB_API rispeb_status rispeb_scenario_preset(const char* name, rispeb_scenario** out);
RISPEB_API rispeb_status rispeb_scenario_save(const rispeb_scenario* s, const char* path);
/* Canonical serialization; free with rispeb_string_free. */
RISPEB_API rispeb_status rispeb_scenario_to_text(const rispeb_scenario* s, char** out_text);
RISPEB_API rispeb_status rispeb_scenario_fingerprint(const rispeb_scenario* s, char** out_text);
/* 1 when no panel faces the receiver, else 0; -1 on null input. */
RISPEB_API int rispeb_scenario_is_degenerate(const rispeb_scenario* s);
RISPEB_API void rispeb_scenario_free(rispeb_scenario* s);

/* ---- experiments ------------------------------------------------------ */

RISPEB_API rispeb_status rispeb_experiment_new(rispeb_experiment** out);
/* "eval" | "opt-cont" | "opt-disc" | "sweep" | "heatmap". */
RISPEB_API rispeb_status rispeb_experiment_set_mode(rispeb_experiment* e, const char* mode);
/* "power-dbm" | "measurements" | "elements-per-side" | "bits" | "ris-count". */
RISPEB_API rispeb_status rispeb_experiment_set_axis(rispeb_experiment* e, const char* axis,
                                                    const double* values, size_t count);
RISPEB_API rispeb_status rispeb_experiment_set_seeds(rispeb_experiment* e, const uint64_t* seeds,
                                                     size_t count);
RISPEB_API rispeb_status rispeb_experiment_set_bits(rispeb_experiment* e, int bits);
/* "quick" | "default" | "paper". */
RISPEB_API rispeb_status rispeb_experiment_set_budget(rispeb_experiment* e, const char* preset);
RISPEB_API rispeb_status rispeb_experiment_set_grid(rispeb_experiment* e, int width, int height);
RISPEB_API rispeb_status rispeb_experiment_set_plane_z(rispeb_experiment* e, double z_m);
/* "coherent-max" | "ebs" | "random". */
RISPEB_API rispeb_status rispeb_experiment_set_eval_profile(rispeb_experiment* e,
                                                            const char* profile);
/* Nonzero: report wall_ms as 0 so identical runs emit identical bytes. */
RISPEB_API rispeb_status rispeb_experiment_set_repro_output(rispeb_experiment* e, int enabled);
/* Nonzero: suppress the per-cell progress log on stderr. */
RISPEB_API rispeb_status rispeb_experiment_set_quiet(rispeb_experiment* e, int enabled);
/* Room bounding box for beam-sweep covers and heatmap extents. */
RISPEB_API rispeb_status rispeb_experiment_set_room_box(rispeb_experiment* e, const double min_m[3],
                                                        const double max_m[3]);
RISPEB_API void rispeb_experiment_free(rispeb_experiment* e);

RISPEB_API rispeb_status rispeb_experiment_run(const rispeb_experiment* e,
                                               const rispeb_scenario* s, rispeb_report** out);

/* ---- reports ----------------------------------------------------------- */

typedef struct rispeb_row_view {
  const char* scenario; /* fingerprint; owned by the report */
  const char* method;
  const char* axis;
  double value;
  double peb_m;
  long long iters;
  double wall_ms;
  uint64_t seed;
} rispeb_row_view;

RISPEB_API size_t rispeb_report_row_count(const rispeb_report* r);
RISPEB_API rispeb_status rispeb_report_row(const rispeb_report* r, size_t index,
                                           rispeb_row_view* out);
/* format: "csv" | "json"; free the string with rispeb_string_free. */
RISPEB_API rispeb_status rispeb_report_to_string(const rispeb_report* r, const char* format,
                                                 char** out_text);
/* path "-" writes to stdout. */
RISPEB_API rispeb_status rispeb_report_emit(const rispeb_report* r, const char* format,
                                            const char* path);
RISPEB_API void rispeb_report_free(rispeb_report* r);

#ifdef __cplusplus
}
#endif

#endif /* RISPEB_H */
