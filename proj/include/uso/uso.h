/*
 * uso.h - C interface to the Ultimate pitch-control / USO engine.
 *
 * Handles are opaque. Every function returning int reports one of the
 * uso_status codes; on failure uso_last_error() describes the problem for the
 * calling thread. The status values double as the CLI exit codes.
 */
#ifndef USO_USO_H
#define USO_USO_H

#include <stddef.h>

#if defined(_WIN32)
#  define USO_API __declspec(dllexport)
#else
#  define USO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uso_status {
  USO_OK = 0,
  USO_ERR_INTERNAL = 1,
  USO_ERR_INPUT = 2,
  USO_ERR_COMPUTE = 3,
  USO_ERR_EVALUATE = 4,
  USO_ERR_CONFIG = 5
} uso_status;

typedef enum uso_direction { USO_PLUSX = 0, USO_MINUSX = 1 } uso_direction;

typedef enum uso_outcome {
  USO_OUTCOME_UNSET = -1,
  USO_OUTCOME_SCORE = 0,
  USO_OUTCOME_TURNOVER = 1
} uso_outcome;

typedef enum uso_format { USO_FORMAT_CSV = 0, USO_FORMAT_MARKDOWN = 1 } uso_format;

typedef struct uso_config uso_config;
typedef struct uso_set uso_set;

/* Message for the last failing call on this thread ("" if none). */
USO_API const char* uso_last_error(void);

USO_API uso_config* uso_config_new(void);
USO_API void uso_config_free(uso_config* cfg);
/* Keys as in the config file (field, fps, grid_cell, dt, ...). A value that
 * leaves the configuration invalid is rejected and cfg is left unchanged. */
USO_API int uso_config_set(uso_config* cfg, const char* key, const char* value);
USO_API int uso_config_load(uso_config* cfg, const char* path);
/* Resolved `key = value` text; valid until the next call on cfg. */
USO_API const char* uso_config_text(uso_config* cfg);

/* Loads a set directory (tracking.csv, events.csv, set.cfg). */
USO_API int uso_set_load(const char* dir, uso_set** out);
USO_API void uso_set_free(uso_set* set);
USO_API size_t uso_set_frame_count(const uso_set* set);
USO_API size_t uso_set_pass_count(const uso_set* set);

/* events_path, homography_path and set_id may be NULL. outcome is only used
 * when events_path is NULL. */
USO_API int uso_ingest(const uso_config* cfg, const char* tracking_path, const char* events_path,
                       const char* homography_path, uso_direction direction, uso_outcome outcome,
                       const char* set_id, const char* out_dir);

/* threads == 0 selects the available hardware parallelism. */
USO_API int uso_compute(const uso_config* cfg, const uso_set* set, const char* out_dir,
                        int dump_grids, unsigned threads);

USO_API int uso_evaluate(const uso_config* cfg, const uso_set* const* sets, size_t count,
                         uso_format format, const char* out_dir, unsigned threads);

/* layer: ppcf_off, ppcf_def, w_area, w_distance or uso. */
USO_API int uso_heatmap(const uso_config* cfg, const uso_set* set, long long frame,
                        const char* layer, const char* out_dir, unsigned threads);

/* scenario: static, free_cut or marked_holder. */
USO_API int uso_synth(const uso_config* cfg, const char* scenario, const char* out_dir);

/* USO Score per frame; writes min(capacity, frames) values, returns status. */
USO_API int uso_score_series(const uso_config* cfg, const uso_set* set, unsigned threads,
                             double* scores, size_t capacity);

/* points: n rows of (px, py, cx, cy). out: row-major 3x3 with out[8] == 1. */
USO_API int uso_estimate_homography(const double* points, size_t n, double out[9]);
USO_API int uso_project(const double h[9], double x, double y, double* out_x, double* out_y);

#ifdef __cplusplus
}
#endif

#endif /* USO_USO_H */
