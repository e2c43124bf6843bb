/*
 * C interface to the nprclust library.
 *
 * Objects are opaque handles created by nprc_*_create / load / solve calls
 * and released with the matching nprc_*_free. Every fallible call returns an
 * nprc_status; on failure nprc_last_error() describes the problem for the
 * calling thread.
 *
 * Array accessors follow a two-call pattern: pass buf = NULL to learn the
 * length through *len, then call again with a buffer of at least that many
 * elements. A non-NULL buffer that is too small yields
 * NPRC_BUFFER_TOO_SMALL with *len still set.
 */
#ifndef NPRCLUST_H
#define NPRCLUST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define NPRC_API __declspec(dllexport)
#else
#define NPRC_API __attribute__((visibility("default")))
#endif

typedef enum nprc_status {
  NPRC_OK = 0,
  NPRC_INVALID_ARGUMENT = 1,
  NPRC_DISCONNECTED_GRAPH = 2,
  NPRC_SELF_LOOP = 3,
  NPRC_DUPLICATE_EDGE = 4,
  NPRC_NONPOSITIVE_WEIGHT = 5,
  NPRC_EMPTY_OR_FULL_SET = 6,
  NPRC_DIMENSION_MISMATCH = 7,
  NPRC_SOLVER_FAILURE = 8,
  NPRC_SIZE_EXCEEDED = 9,
  NPRC_LINEAR_SOLVE_FAILURE = 10,
  NPRC_PARSE_ERROR = 11,
  NPRC_IO_ERROR = 12,
  NPRC_EMPTY_INPUT = 13,
  NPRC_EMPTY_TRUTH = 14,
  NPRC_BUFFER_TOO_SMALL = 15,
  NPRC_MISSING_LABELS = 16,
  NPRC_OUT_OF_MEMORY = 98,
  NPRC_INTERNAL_ERROR = 99
} nprc_status;

typedef enum nprc_edge_length {
  NPRC_LENGTH_INVERSE_WEIGHT = 0,
  NPRC_LENGTH_WEIGHT = 1
} nprc_edge_length;

typedef enum nprc_iota_mode {
  NPRC_IOTA_AVERAGE_SIDES = 0,
  NPRC_IOTA_MAX = 1
} nprc_iota_mode;

typedef enum nprc_method { NPRC_METHOD_NPR = 0, NPRC_METHOD_APPR = 1 } nprc_method;

typedef enum nprc_lm_status {
  NPRC_LM_CONVERGED = 0,
  NPRC_LM_ITERATION_CAP = 1,
  NPRC_LM_STALL = 2
} nprc_lm_status;

#define NPRC_MAX_SCHEDULE 32

typedef struct nprc_npr_config {
  double beta;
  double zeta; /* 0 selects 1e-6 for n >= 1e4, else 1e-11 */
  double p_schedule[NPRC_MAX_SCHEDULE];
  size_t p_count;
  int64_t seed_vertex;
  double fixed_value;
  double grad_tol;
  double step_tol;
  int32_t max_iters;
  double lambda0_factor;
  int32_t pin_length; /* nprc_edge_length */
  int64_t dense_limit;
} nprc_npr_config;

typedef struct nprc_appr_config {
  double alpha;   /* damping: probability of following an edge */
  double epsilon; /* 0 selects 1e-6 / n */
  int64_t seed_vertex;
} nprc_appr_config;

typedef struct nprc_protocol {
  int32_t repetitions;
  uint64_t rng_seed;
  int32_t method; /* nprc_method */
  nprc_npr_config npr;
  nprc_appr_config appr;
  int32_t restrict_label_enabled;
  int64_t restrict_label;
  const int64_t* seed_vertices; /* optional fixed seeds, used cyclically */
  size_t seed_count;
  int32_t threads; /* 0 = hardware concurrency */
} nprc_protocol;

typedef struct nprc_validate_options {
  double beta;
  double zeta;
  int64_t seed_vertex;
  double p_values[NPRC_MAX_SCHEDULE];
  size_t p_count;
  uint64_t rng_seed;
  int64_t dense_limit;
  double fd_step;
} nprc_validate_options;

typedef struct nprc_graph nprc_graph;
typedef struct nprc_points nprc_points;
typedef struct nprc_npr_result nprc_npr_result;
typedef struct nprc_appr_result nprc_appr_result;
typedef struct nprc_report nprc_report;
typedef struct nprc_validation nprc_validation;

/* -- general ------------------------------------------------------------- */

NPRC_API const char* nprc_version(void);
NPRC_API const char* nprc_status_name(nprc_status status);
/* Message of the last failure on this thread; "" when none. */
NPRC_API const char* nprc_last_error(void);

NPRC_API void nprc_npr_config_default(nprc_npr_config* cfg);
NPRC_API void nprc_appr_config_default(nprc_appr_config* cfg);
NPRC_API void nprc_protocol_default(nprc_protocol* protocol);
NPRC_API void nprc_validate_options_default(nprc_validate_options* opts);
NPRC_API double nprc_gaussian_beta_preset(int32_t groups);
NPRC_API double nprc_default_zeta(int64_t n);

/* -- graphs -------------------------------------------------------------- */

NPRC_API nprc_status nprc_graph_from_edges(const int64_t* u, const int64_t* v, const double* w,
                                           size_t m, nprc_graph** out);
NPRC_API nprc_status nprc_graph_load_edge_list(const char* path, nprc_graph** out);
/* LFR network.dat / community.dat pair; labels are attached to the graph. */
NPRC_API nprc_status nprc_graph_load_lfr(const char* network_path, const char* community_path,
                                         nprc_graph** out);
/* Travel-cost CSV "u,v,cost"; keeps the largest component. */
NPRC_API nprc_status nprc_graph_build_cost(const char* path, int32_t iota_mode,
                                           nprc_graph** out);
/* kNN similarity graph; point labels, when present, carry over. */
NPRC_API nprc_status nprc_graph_build_knn(const nprc_points* points, int32_t k,
                                          nprc_graph** out);
NPRC_API void nprc_graph_free(nprc_graph* g);

NPRC_API nprc_status nprc_graph_save_edge_list(const nprc_graph* g, const char* path);
NPRC_API int64_t nprc_graph_num_vertices(const nprc_graph* g);
NPRC_API int64_t nprc_graph_num_edges(const nprc_graph* g);
NPRC_API double nprc_graph_total_volume(const nprc_graph* g);
/* Vertices removed by a builder that kept only the largest component. */
NPRC_API int64_t nprc_graph_dropped_vertices(const nprc_graph* g);
NPRC_API nprc_status nprc_graph_degrees(const nprc_graph* g, double* buf, size_t cap,
                                        size_t* len);
/* Original point / site id of each vertex (identity for loaded edge lists). */
NPRC_API nprc_status nprc_graph_source_ids(const nprc_graph* g, int64_t* buf, size_t cap,
                                           size_t* len);
NPRC_API nprc_status nprc_graph_save_source_ids(const nprc_graph* g, const char* path);

NPRC_API int32_t nprc_graph_has_labels(const nprc_graph* g);
NPRC_API nprc_status nprc_graph_set_labels(nprc_graph* g, const int64_t* labels, size_t n);
NPRC_API nprc_status nprc_graph_load_labels(nprc_graph* g, const char* path);
NPRC_API nprc_status nprc_graph_save_labels(const nprc_graph* g, const char* path);
NPRC_API nprc_status nprc_graph_labels(const nprc_graph* g, int64_t* buf, size_t cap,
                                       size_t* len);

NPRC_API nprc_status nprc_graph_conductance(const nprc_graph* g, const int64_t* members,
                                            size_t count, double* out);
NPRC_API nprc_status nprc_graph_furthest_vertex(const nprc_graph* g, int64_t source,
                                                int32_t length_mode, int64_t* out);

/* -- point clouds -------------------------------------------------------- */

NPRC_API nprc_status nprc_points_gaussian(int32_t groups, int32_t per_group, double variance,
                                          double grid_spacing, uint64_t rng_seed,
                                          nprc_points** out);
/* labels_path may be NULL. */
NPRC_API nprc_status nprc_points_load(const char* path, const char* labels_path,
                                      nprc_points** out);
NPRC_API nprc_status nprc_points_save(const nprc_points* pc, const char* path,
                                      const char* labels_path);
NPRC_API int64_t nprc_points_size(const nprc_points* pc);
NPRC_API int64_t nprc_points_dim(const nprc_points* pc);
NPRC_API nprc_status nprc_points_coords(const nprc_points* pc, double* buf, size_t cap,
                                        size_t* len);
NPRC_API nprc_status nprc_points_labels(const nprc_points* pc, int64_t* buf, size_t cap,
                                        size_t* len);
NPRC_API void nprc_points_free(nprc_points* pc);

/* -- NPR continuation + sweep ---------------------------------------------- */

NPRC_API nprc_status nprc_npr_solve(const nprc_graph* g, const nprc_npr_config* cfg,
                                    nprc_npr_result** out);
NPRC_API void nprc_npr_result_free(nprc_npr_result* r);

NPRC_API int64_t nprc_npr_pinned_vertex(const nprc_npr_result* r);
NPRC_API size_t nprc_npr_count(const nprc_npr_result* r);
/* Per schedule entry i. */
NPRC_API double nprc_npr_p(const nprc_npr_result* r, size_t i);
NPRC_API int32_t nprc_npr_lm_status(const nprc_npr_result* r, size_t i);
NPRC_API int32_t nprc_npr_iterations(const nprc_npr_result* r, size_t i);
NPRC_API double nprc_npr_final_psi(const nprc_npr_result* r, size_t i);
NPRC_API double nprc_npr_final_grad_norm(const nprc_npr_result* r, size_t i);
NPRC_API double nprc_npr_sweep_phi(const nprc_npr_result* r, size_t i);
NPRC_API nprc_status nprc_npr_solution(const nprc_npr_result* r, size_t i, double* buf,
                                       size_t cap, size_t* len);
NPRC_API nprc_status nprc_npr_write_solution(const nprc_npr_result* r, size_t i,
                                             const char* path);
NPRC_API nprc_status nprc_npr_write_trace(const nprc_npr_result* r, size_t i,
                                          const char* path);
NPRC_API nprc_status nprc_npr_write_profile(const nprc_npr_result* r, size_t i,
                                            const char* path);
/* Best cluster over the schedule. */
NPRC_API double nprc_npr_best_p(const nprc_npr_result* r);
NPRC_API double nprc_npr_best_phi(const nprc_npr_result* r);
NPRC_API nprc_status nprc_npr_best_members(const nprc_npr_result* r, int64_t* buf, size_t cap,
                                           size_t* len);
NPRC_API nprc_status nprc_npr_write_members(const nprc_npr_result* r, const char* path);

/* -- APPR baseline ------------------------------------------------------- */

NPRC_API nprc_status nprc_appr_solve(const nprc_graph* g, const nprc_appr_config* cfg,
                                     nprc_appr_result** out);
NPRC_API void nprc_appr_result_free(nprc_appr_result* r);
NPRC_API int64_t nprc_appr_pushes(const nprc_appr_result* r);
NPRC_API double nprc_appr_best_phi(const nprc_appr_result* r);
NPRC_API nprc_status nprc_appr_vector(const nprc_appr_result* r, double* buf, size_t cap,
                                      size_t* len);
NPRC_API nprc_status nprc_appr_best_members(const nprc_appr_result* r, int64_t* buf,
                                            size_t cap, size_t* len);
NPRC_API nprc_status nprc_appr_write_vector(const nprc_appr_result* r, const char* path);
NPRC_API nprc_status nprc_appr_write_profile(const nprc_appr_result* r, const char* path);
NPRC_API nprc_status nprc_appr_write_members(const nprc_appr_result* r, const char* path);

/* -- experiments --------------------------------------------------------- */

/* The graph must carry labels. */
NPRC_API nprc_status nprc_experiment_run(const nprc_graph* g, const nprc_protocol* protocol,
                                         nprc_report** out);
NPRC_API void nprc_report_free(nprc_report* r);
NPRC_API size_t nprc_report_count(const nprc_report* r);
NPRC_API size_t nprc_report_failures(const nprc_report* r);
NPRC_API double nprc_report_phi_mean(const nprc_report* r);
NPRC_API double nprc_report_phi_std(const nprc_report* r);
NPRC_API double nprc_report_fscore_mean(const nprc_report* r);
NPRC_API double nprc_report_fscore_std(const nprc_report* r);
NPRC_API int64_t nprc_report_seed(const nprc_report* r, size_t i);
NPRC_API double nprc_report_phi(const nprc_report* r, size_t i);
NPRC_API double nprc_report_fscore(const nprc_report* r, size_t i);
NPRC_API double nprc_report_best_p(const nprc_report* r, size_t i);
/* NULL when repetition i succeeded. */
NPRC_API const char* nprc_report_error(const nprc_report* r, size_t i);
NPRC_API nprc_status nprc_report_write_csv(const nprc_report* r, const char* path);
NPRC_API nprc_status nprc_report_write_json(const nprc_report* r, const char* path);

/* Balanced F-score of two member lists over a graph's vertices. */
NPRC_API nprc_status nprc_fscore(const nprc_graph* g, const int64_t* predicted, size_t np,
                                 const int64_t* truth, size_t nt, double* out);

/* -- validation ---------------------------------------------------------- */

NPRC_API nprc_status nprc_validate(const nprc_graph* g, const nprc_validate_options* opts,
                                   nprc_validation** out);
NPRC_API void nprc_validation_free(nprc_validation* v);
NPRC_API size_t nprc_validation_count(const nprc_validation* v);
NPRC_API int32_t nprc_validation_all_passed(const nprc_validation* v);
/* Any output pointer may be NULL. *name stays valid until the handle is freed. */
NPRC_API nprc_status nprc_validation_check(const nprc_validation* v, size_t i, const char** name,
                                           double* value, double* tolerance, int32_t* passed,
                                           int32_t* skipped);

#ifdef __cplusplus
}
#endif

#endif /* NPRCLUST_H */
