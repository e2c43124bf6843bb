#include "nprclust/nprclust.h"

#include <cstring>
#include <limits>
#include <new>
#include <numeric>
#include <string>

#include "nprclust/io.hpp"
#include "nprclust/validate.hpp"

using namespace nprc;

struct nprc_graph {
  Graph graph;
  std::vector<std::int64_t> source_ids;
  std::size_t dropped = 0;
  std::vector<Label> labels;  // empty or one per vertex
};

struct nprc_points {
  PointCloud pc;
};

struct nprc_npr_result {
  NprClusterResult result;
  std::vector<std::int64_t> ids;
};

struct nprc_appr_result {
  ApprClusterResult result;
  std::vector<std::int64_t> ids;
};

struct nprc_report {
  ExperimentReport report;
  std::vector<std::int64_t> ids;
};

struct nprc_validation {
  ValidationReport report;
};

namespace {

thread_local std::string last_error;

void set_error(const std::string& msg) { last_error = msg; }

// Raised for statuses with no ErrorCode counterpart.
struct StatusError {
  nprc_status status;
  std::string what;
};

template <class F>
nprc_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return NPRC_OK;
  } catch (const Error& e) {
    set_error(e.what());
    return static_cast<nprc_status>(static_cast<int>(e.code()));
  } catch (const StatusError& e) {
    set_error(e.what);
    return e.status;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return NPRC_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    set_error(e.what());
    return NPRC_INTERNAL_ERROR;
  } catch (...) {
    set_error("unknown failure");
    return NPRC_INTERNAL_ERROR;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

template <class T, class Src>
void copy_out(const Src& src, T* buf, std::size_t cap, std::size_t* len) {
  require(len != nullptr, "len must not be NULL");
  *len = static_cast<std::size_t>(src.size());
  if (buf == nullptr) return;
  if (cap < *len) throw StatusError{NPRC_BUFFER_TOO_SMALL, "buffer too small"};
  for (std::size_t i = 0; i < *len; ++i) buf[i] = static_cast<T>(src[i]);
}

Vertex to_vertex(std::int64_t v, Vertex n) {
  if (v < 0 || v >= n) throw Error(ErrorCode::InvalidArgument, "vertex id out of range");
  return static_cast<Vertex>(v);
}

std::vector<Vertex> to_vertices(const std::int64_t* ids, std::size_t count, Vertex n) {
  require(ids != nullptr || count == 0, "member list must not be NULL");
  std::vector<Vertex> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(to_vertex(ids[i], n));
  return out;
}

std::vector<std::int64_t> identity_ids(Vertex n) {
  std::vector<std::int64_t> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

nprc_graph* wrap(Graph g) {
  const Vertex n = g.num_vertices();
  return new nprc_graph{std::move(g), identity_ids(n), 0, {}};
}

NprConfig to_cpp(const nprc_npr_config& c) {
  require(c.p_count >= 1 && c.p_count <= NPRC_MAX_SCHEDULE, "p_count must be in 1..32");
  NprConfig out;
  out.beta = c.beta;
  out.zeta = c.zeta;
  out.p_schedule.assign(c.p_schedule, c.p_schedule + c.p_count);
  require(c.seed_vertex >= 0 && c.seed_vertex <= std::numeric_limits<Vertex>::max(),
          "seed vertex out of range");
  out.seed_vertex = static_cast<Vertex>(c.seed_vertex);
  out.fixed_value = c.fixed_value;
  out.grad_tol = c.grad_tol;
  out.step_tol = c.step_tol;
  out.max_iters = c.max_iters;
  out.lambda0_factor = c.lambda0_factor;
  require(c.pin_length == NPRC_LENGTH_INVERSE_WEIGHT || c.pin_length == NPRC_LENGTH_WEIGHT,
          "unknown edge length mode");
  out.pin_length = c.pin_length == NPRC_LENGTH_WEIGHT ? EdgeLength::Weight
                                                       : EdgeLength::InverseWeight;
  require(c.dense_limit >= 1 && c.dense_limit <= std::numeric_limits<Vertex>::max(),
          "dense_limit out of range");
  out.dense_limit = static_cast<Vertex>(c.dense_limit);
  return out;
}

ApprConfig to_cpp(const nprc_appr_config& c) {
  ApprConfig out;
  out.alpha = c.alpha;
  out.epsilon = c.epsilon;
  require(c.seed_vertex >= 0 && c.seed_vertex <= std::numeric_limits<Vertex>::max(),
          "seed vertex out of range");
  out.seed_vertex = static_cast<Vertex>(c.seed_vertex);
  return out;
}

}  // namespace

extern "C" {

const char* nprc_version(void) { return "0.1.0"; }

const char* nprc_status_name(nprc_status s) {
  switch (s) {
    case NPRC_OK: return "ok";
    case NPRC_INVALID_ARGUMENT: return "invalid_argument";
    case NPRC_DISCONNECTED_GRAPH: return "disconnected_graph";
    case NPRC_SELF_LOOP: return "self_loop";
    case NPRC_DUPLICATE_EDGE: return "duplicate_edge";
    case NPRC_NONPOSITIVE_WEIGHT: return "nonpositive_weight";
    case NPRC_EMPTY_OR_FULL_SET: return "empty_or_full_set";
    case NPRC_DIMENSION_MISMATCH: return "dimension_mismatch";
    case NPRC_SOLVER_FAILURE: return "solver_failure";
    case NPRC_SIZE_EXCEEDED: return "size_exceeded";
    case NPRC_LINEAR_SOLVE_FAILURE: return "linear_solve_failure";
    case NPRC_PARSE_ERROR: return "parse_error";
    case NPRC_IO_ERROR: return "io_error";
    case NPRC_EMPTY_INPUT: return "empty_input";
    case NPRC_EMPTY_TRUTH: return "empty_truth";
    case NPRC_BUFFER_TOO_SMALL: return "buffer_too_small";
    case NPRC_MISSING_LABELS: return "missing_labels";
    case NPRC_OUT_OF_MEMORY: return "out_of_memory";
    case NPRC_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

const char* nprc_last_error(void) { return last_error.c_str(); }

void nprc_npr_config_default(nprc_npr_config* cfg) {
  if (!cfg) return;
  const NprConfig d;
  std::memset(cfg, 0, sizeof *cfg);
  cfg->beta = d.beta;
  cfg->zeta = d.zeta;
  cfg->p_count = d.p_schedule.size();
  std::copy(d.p_schedule.begin(), d.p_schedule.end(), cfg->p_schedule);
  cfg->seed_vertex = d.seed_vertex;
  cfg->fixed_value = d.fixed_value;
  cfg->grad_tol = d.grad_tol;
  cfg->step_tol = d.step_tol;
  cfg->max_iters = d.max_iters;
  cfg->lambda0_factor = d.lambda0_factor;
  cfg->pin_length = NPRC_LENGTH_INVERSE_WEIGHT;
  cfg->dense_limit = d.dense_limit;
}

void nprc_appr_config_default(nprc_appr_config* cfg) {
  if (!cfg) return;
  const ApprConfig d;
  cfg->alpha = d.alpha;
  cfg->epsilon = d.epsilon;
  cfg->seed_vertex = d.seed_vertex;
}

void nprc_protocol_default(nprc_protocol* p) {
  if (!p) return;
  const Protocol d;
  std::memset(p, 0, sizeof *p);
  p->repetitions = d.repetitions;
  p->rng_seed = d.rng_seed;
  p->method = NPRC_METHOD_NPR;
  nprc_npr_config_default(&p->npr);
  nprc_appr_config_default(&p->appr);
  p->threads = d.threads;
}

void nprc_validate_options_default(nprc_validate_options* o) {
  if (!o) return;
  const ValidateOptions d;
  std::memset(o, 0, sizeof *o);
  o->beta = d.beta;
  o->zeta = d.zeta;
  o->seed_vertex = d.seed_vertex;
  o->p_count = d.p_values.size();
  std::copy(d.p_values.begin(), d.p_values.end(), o->p_values);
  o->rng_seed = d.rng_seed;
  o->dense_limit = d.dense_limit;
  o->fd_step = d.fd_step;
}

double nprc_gaussian_beta_preset(int32_t groups) { return gaussian_beta_preset(groups); }

double nprc_default_zeta(int64_t n) {
  return default_zeta(static_cast<Vertex>(std::min<int64_t>(n, std::numeric_limits<Vertex>::max())));
}

// -- graphs -----------------------------------------------------------------

nprc_status nprc_graph_from_edges(const int64_t* u, const int64_t* v, const double* w, size_t m,
                                  nprc_graph** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    require(m == 0 || (u && v), "edge arrays must not be NULL");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (size_t i = 0; i < m; ++i) {
      require(u[i] >= 0 && v[i] >= 0 && u[i] < std::numeric_limits<Vertex>::max() &&
                  v[i] < std::numeric_limits<Vertex>::max(),
              "vertex id out of range");
      edges.push_back({static_cast<Vertex>(u[i]), static_cast<Vertex>(v[i]), w ? w[i] : 1.0});
    }
    *out = wrap(Graph::build(std::move(edges)));
  });
}

nprc_status nprc_graph_load_edge_list(const char* path, nprc_graph** out) {
  return guarded([&] {
    require(path && out, "path and out must not be NULL");
    *out = wrap(load_edge_list(path));
  });
}

nprc_status nprc_graph_load_lfr(const char* network_path, const char* community_path,
                                nprc_graph** out) {
  return guarded([&] {
    require(network_path && community_path && out, "arguments must not be NULL");
    auto lg = load_lfr(network_path, community_path);
    auto* g = wrap(std::move(lg.graph));
    g->labels = std::move(lg.labels);
    *out = g;
  });
}

nprc_status nprc_graph_build_cost(const char* path, int32_t iota_mode, nprc_graph** out) {
  return guarded([&] {
    require(path && out, "path and out must not be NULL");
    require(iota_mode == NPRC_IOTA_AVERAGE_SIDES || iota_mode == NPRC_IOTA_MAX,
            "unknown iota mode");
    auto bg = build_cost_graph(load_cost_table(path),
                               iota_mode == NPRC_IOTA_MAX ? IotaMode::MaxIota
                                                          : IotaMode::AverageSides);
    *out = new nprc_graph{std::move(bg.graph), std::move(bg.source_ids), bg.dropped_vertices, {}};
  });
}

nprc_status nprc_graph_build_knn(const nprc_points* points, int32_t k, nprc_graph** out) {
  return guarded([&] {
    require(points && out, "arguments must not be NULL");
    auto bg = build_knn_graph(points->pc, k);
    std::vector<Label> labels;
    if (!points->pc.labels.empty())
      for (auto id : bg.source_ids) labels.push_back(points->pc.labels[static_cast<size_t>(id)]);
    *out = new nprc_graph{std::move(bg.graph), std::move(bg.source_ids), bg.dropped_vertices,
                          std::move(labels)};
  });
}

void nprc_graph_free(nprc_graph* g) { delete g; }

nprc_status nprc_graph_save_edge_list(const nprc_graph* g, const char* path) {
  return guarded([&] {
    require(g && path, "arguments must not be NULL");
    save_edge_list(g->graph, path);
  });
}

int64_t nprc_graph_num_vertices(const nprc_graph* g) { return g ? g->graph.num_vertices() : 0; }
int64_t nprc_graph_num_edges(const nprc_graph* g) {
  return g ? static_cast<int64_t>(g->graph.num_edges()) : 0;
}
double nprc_graph_total_volume(const nprc_graph* g) { return g ? g->graph.total_volume() : 0.0; }
int64_t nprc_graph_dropped_vertices(const nprc_graph* g) {
  return g ? static_cast<int64_t>(g->dropped) : 0;
}

nprc_status nprc_graph_degrees(const nprc_graph* g, double* buf, size_t cap, size_t* len) {
  return guarded([&] {
    require(g != nullptr, "graph must not be NULL");
    copy_out(g->graph.degrees(), buf, cap, len);
  });
}

nprc_status nprc_graph_source_ids(const nprc_graph* g, int64_t* buf, size_t cap, size_t* len) {
  return guarded([&] {
    require(g != nullptr, "graph must not be NULL");
    copy_out(g->source_ids, buf, cap, len);
  });
}

nprc_status nprc_graph_save_source_ids(const nprc_graph* g, const char* path) {
  return guarded([&] {
    require(g && path, "arguments must not be NULL");
    std::string text;
    for (auto id : g->source_ids) text += std::to_string(id) + "\n";
    write_text(path, text);
  });
}

int32_t nprc_graph_has_labels(const nprc_graph* g) { return g && !g->labels.empty(); }

nprc_status nprc_graph_set_labels(nprc_graph* g, const int64_t* labels, size_t n) {
  return guarded([&] {
    require(g && labels, "arguments must not be NULL");
    if (n != static_cast<size_t>(g->graph.num_vertices()))
      throw Error(ErrorCode::DimensionMismatch, "one label per vertex expected");
    g->labels.assign(labels, labels + n);
  });
}

nprc_status nprc_graph_load_labels(nprc_graph* g, const char* path) {
  return guarded([&] {
    require(g && path, "arguments must not be NULL");
    auto labels = load_labels(path);
    if (labels.size() != static_cast<size_t>(g->graph.num_vertices()))
      throw Error(ErrorCode::DimensionMismatch,
                  std::string(path) + ": expected " + std::to_string(g->graph.num_vertices()) +
                      " labels, found " + std::to_string(labels.size()));
    g->labels = std::move(labels);
  });
}

nprc_status nprc_graph_save_labels(const nprc_graph* g, const char* path) {
  return guarded([&] {
    require(g && path, "arguments must not be NULL");
    if (g->labels.empty()) throw Error(ErrorCode::EmptyInput, "graph carries no labels");
    save_labels(g->labels, path);
  });
}

nprc_status nprc_graph_labels(const nprc_graph* g, int64_t* buf, size_t cap, size_t* len) {
  return guarded([&] {
    require(g != nullptr, "graph must not be NULL");
    copy_out(g->labels, buf, cap, len);
  });
}

nprc_status nprc_graph_conductance(const nprc_graph* g, const int64_t* members, size_t count,
                                   double* out) {
  return guarded([&] {
    require(g && out, "arguments must not be NULL");
    auto vs = to_vertices(members, count, g->graph.num_vertices());
    *out = conductance(g->graph, VertexSet(g->graph, vs));
  });
}

nprc_status nprc_graph_furthest_vertex(const nprc_graph* g, int64_t source, int32_t length_mode,
                                       int64_t* out) {
  return guarded([&] {
    require(g && out, "arguments must not be NULL");
    require(length_mode == NPRC_LENGTH_INVERSE_WEIGHT || length_mode == NPRC_LENGTH_WEIGHT,
            "unknown edge length mode");
    *out = furthest_vertex(g->graph, to_vertex(source, g->graph.num_vertices()),
                           length_mode == NPRC_LENGTH_WEIGHT ? EdgeLength::Weight
                                                             : EdgeLength::InverseWeight);
  });
}

// -- point clouds -------------------------------------------------------------

nprc_status nprc_points_gaussian(int32_t groups, int32_t per_group, double variance,
                                 double grid_spacing, uint64_t rng_seed, nprc_points** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    *out = new nprc_points{
        gen_gaussian_groupings(groups, per_group, variance, grid_spacing, rng_seed)};
  });
}

nprc_status nprc_points_load(const char* path, const char* labels_path, nprc_points** out) {
  return guarded([&] {
    require(path && out, "path and out must not be NULL");
    PointCloud pc = load_points(path);
    if (labels_path) {
      pc.labels = load_labels(labels_path);
      pc.validate();
    }
    *out = new nprc_points{std::move(pc)};
  });
}

nprc_status nprc_points_save(const nprc_points* pc, const char* path, const char* labels_path) {
  return guarded([&] {
    require(pc && path, "arguments must not be NULL");
    save_points(pc->pc, path);
    if (labels_path) save_labels(pc->pc.labels, labels_path);
  });
}

int64_t nprc_points_size(const nprc_points* pc) {
  return pc ? static_cast<int64_t>(pc->pc.size()) : 0;
}
int64_t nprc_points_dim(const nprc_points* pc) { return pc ? static_cast<int64_t>(pc->pc.dim) : 0; }

nprc_status nprc_points_coords(const nprc_points* pc, double* buf, size_t cap, size_t* len) {
  return guarded([&] {
    require(pc != nullptr, "points must not be NULL");
    copy_out(pc->pc.coords, buf, cap, len);
  });
}

nprc_status nprc_points_labels(const nprc_points* pc, int64_t* buf, size_t cap, size_t* len) {
  return guarded([&] {
    require(pc != nullptr, "points must not be NULL");
    copy_out(pc->pc.labels, buf, cap, len);
  });
}

void nprc_points_free(nprc_points* pc) { delete pc; }

// -- NPR --------------------------------------------------------------------

nprc_status nprc_npr_solve(const nprc_graph* g, const nprc_npr_config* cfg,
                           nprc_npr_result** out) {
  return guarded([&] {
    require(g && cfg && out, "arguments must not be NULL");
    *out = new nprc_npr_result{cluster_npr(g->graph, to_cpp(*cfg)), g->source_ids};
  });
}

void nprc_npr_result_free(nprc_npr_result* r) { delete r; }

int64_t nprc_npr_pinned_vertex(const nprc_npr_result* r) { return r ? r->result.pinned : -1; }
size_t nprc_npr_count(const nprc_npr_result* r) { return r ? r->result.solutions.size() : 0; }

namespace {
const NprSolution* solution_at(const nprc_npr_result* r, size_t i) {
  return r && i < r->result.solutions.size() ? &r->result.solutions[i] : nullptr;
}
const NprSolution& require_solution(const nprc_npr_result* r, size_t i) {
  const auto* s = solution_at(r, i);
  require(s != nullptr, "result index out of range");
  return *s;
}
}  // namespace

double nprc_npr_p(const nprc_npr_result* r, size_t i) {
  const auto* s = solution_at(r, i);
  return s ? s->p : std::numeric_limits<double>::quiet_NaN();
}
int32_t nprc_npr_lm_status(const nprc_npr_result* r, size_t i) {
  const auto* s = solution_at(r, i);
  return s ? static_cast<int32_t>(s->trace.status) : -1;
}
int32_t nprc_npr_iterations(const nprc_npr_result* r, size_t i) {
  const auto* s = solution_at(r, i);
  return s ? static_cast<int32_t>(s->trace.iterations.size()) : -1;
}
double nprc_npr_final_psi(const nprc_npr_result* r, size_t i) {
  const auto* s = solution_at(r, i);
  return s ? s->trace.final_psi() : std::numeric_limits<double>::quiet_NaN();
}
double nprc_npr_final_grad_norm(const nprc_npr_result* r, size_t i) {
  const auto* s = solution_at(r, i);
  return s ? s->trace.final_grad_norm() : std::numeric_limits<double>::quiet_NaN();
}
double nprc_npr_sweep_phi(const nprc_npr_result* r, size_t i) {
  return solution_at(r, i) ? r->result.profiles[i].best_phi
                           : std::numeric_limits<double>::quiet_NaN();
}

nprc_status nprc_npr_solution(const nprc_npr_result* r, size_t i, double* buf, size_t cap,
                              size_t* len) {
  return guarded([&] { copy_out(require_solution(r, i).x, buf, cap, len); });
}

nprc_status nprc_npr_write_solution(const nprc_npr_result* r, size_t i, const char* path) {
  return guarded([&] {
    require(path != nullptr, "path must not be NULL");
    write_solution_csv(require_solution(r, i).x, path, r->ids);
  });
}

nprc_status nprc_npr_write_trace(const nprc_npr_result* r, size_t i, const char* path) {
  return guarded([&] {
    require(path != nullptr, "path must not be NULL");
    write_trace_jsonl(require_solution(r, i).trace, path);
  });
}

nprc_status nprc_npr_write_profile(const nprc_npr_result* r, size_t i, const char* path) {
  return guarded([&] {
    require(path != nullptr, "path must not be NULL");
    require_solution(r, i);
    write_profile_csv(r->result.profiles[i], path, r->ids);
  });
}

double nprc_npr_best_p(const nprc_npr_result* r) {
  return r ? r->result.best.p : std::numeric_limits<double>::quiet_NaN();
}
double nprc_npr_best_phi(const nprc_npr_result* r) {
  return r ? r->result.best.phi : std::numeric_limits<double>::quiet_NaN();
}

nprc_status nprc_npr_best_members(const nprc_npr_result* r, int64_t* buf, size_t cap,
                                  size_t* len) {
  return guarded([&] {
    require(r != nullptr, "result must not be NULL");
    copy_out(r->result.best.members, buf, cap, len);
  });
}

nprc_status nprc_npr_write_members(const nprc_npr_result* r, const char* path) {
  return guarded([&] {
    require(r && path, "arguments must not be NULL");
    write_members(r->result.best.members, path, r->ids);
  });
}

// -- APPR -------------------------------------------------------------------

nprc_status nprc_appr_solve(const nprc_graph* g, const nprc_appr_config* cfg,
                            nprc_appr_result** out) {
  return guarded([&] {
    require(g && cfg && out, "arguments must not be NULL");
    *out = new nprc_appr_result{cluster_appr(g->graph, to_cpp(*cfg)), g->source_ids};
  });
}

void nprc_appr_result_free(nprc_appr_result* r) { delete r; }
int64_t nprc_appr_pushes(const nprc_appr_result* r) {
  return r ? static_cast<int64_t>(r->result.push.pushes) : 0;
}
double nprc_appr_best_phi(const nprc_appr_result* r) {
  return r ? r->result.best.phi : std::numeric_limits<double>::quiet_NaN();
}

nprc_status nprc_appr_vector(const nprc_appr_result* r, double* buf, size_t cap, size_t* len) {
  return guarded([&] {
    require(r != nullptr, "result must not be NULL");
    copy_out(r->result.push.approx, buf, cap, len);
  });
}

nprc_status nprc_appr_best_members(const nprc_appr_result* r, int64_t* buf, size_t cap,
                                   size_t* len) {
  return guarded([&] {
    require(r != nullptr, "result must not be NULL");
    copy_out(r->result.best.members, buf, cap, len);
  });
}

nprc_status nprc_appr_write_vector(const nprc_appr_result* r, const char* path) {
  return guarded([&] {
    require(r && path, "arguments must not be NULL");
    write_solution_csv(r->result.push.approx, path, r->ids);
  });
}

nprc_status nprc_appr_write_profile(const nprc_appr_result* r, const char* path) {
  return guarded([&] {
    require(r && path, "arguments must not be NULL");
    write_profile_csv(r->result.profile, path, r->ids);
  });
}

nprc_status nprc_appr_write_members(const nprc_appr_result* r, const char* path) {
  return guarded([&] {
    require(r && path, "arguments must not be NULL");
    write_members(r->result.best.members, path, r->ids);
  });
}

// -- experiments ------------------------------------------------------------

nprc_status nprc_experiment_run(const nprc_graph* g, const nprc_protocol* p, nprc_report** out) {
  return guarded([&] {
    require(g && p && out, "arguments must not be NULL");
    if (g->labels.empty())
      throw StatusError{NPRC_MISSING_LABELS, "graph carries no labels; load a label file first"};
    require(p->method == NPRC_METHOD_NPR || p->method == NPRC_METHOD_APPR, "unknown method");
    Protocol proto;
    proto.repetitions = p->repetitions;
    proto.rng_seed = p->rng_seed;
    proto.method = p->method == NPRC_METHOD_APPR ? Method::Appr : Method::Npr;
    proto.npr = to_cpp(p->npr);
    proto.appr = to_cpp(p->appr);
    if (p->restrict_label_enabled) proto.restrict_label = p->restrict_label;
    const Vertex n = g->graph.num_vertices();
    proto.seed_vertices = to_vertices(p->seed_vertices, p->seed_count, n);
    proto.threads = p->threads;
    *out = new nprc_report{run_experiment(g->graph, g->labels, proto), g->source_ids};
  });
}

void nprc_report_free(nprc_report* r) { delete r; }
size_t nprc_report_count(const nprc_report* r) { return r ? r->report.records.size() : 0; }
size_t nprc_report_failures(const nprc_report* r) { return r ? r->report.failures : 0; }
double nprc_report_phi_mean(const nprc_report* r) { return r ? r->report.phi.mean : 0.0; }
double nprc_report_phi_std(const nprc_report* r) { return r ? r->report.phi.stddev : 0.0; }
double nprc_report_fscore_mean(const nprc_report* r) { return r ? r->report.fscore.mean : 0.0; }
double nprc_report_fscore_std(const nprc_report* r) { return r ? r->report.fscore.stddev : 0.0; }

namespace {
const ExperimentRecord* record_at(const nprc_report* r, size_t i) {
  return r && i < r->report.records.size() ? &r->report.records[i] : nullptr;
}
}  // namespace

int64_t nprc_report_seed(const nprc_report* r, size_t i) {
  const auto* rec = record_at(r, i);
  return rec ? rec->seed : -1;
}
double nprc_report_phi(const nprc_report* r, size_t i) {
  const auto* rec = record_at(r, i);
  return rec ? rec->phi : std::numeric_limits<double>::quiet_NaN();
}
double nprc_report_fscore(const nprc_report* r, size_t i) {
  const auto* rec = record_at(r, i);
  return rec ? rec->fscore : std::numeric_limits<double>::quiet_NaN();
}
double nprc_report_best_p(const nprc_report* r, size_t i) {
  const auto* rec = record_at(r, i);
  return rec ? rec->best_p : std::numeric_limits<double>::quiet_NaN();
}
const char* nprc_report_error(const nprc_report* r, size_t i) {
  const auto* rec = record_at(r, i);
  return rec && !rec->ok() ? rec->error.c_str() : nullptr;
}

nprc_status nprc_report_write_csv(const nprc_report* r, const char* path) {
  return guarded([&] {
    require(r && path, "arguments must not be NULL");
    write_report_csv(r->report, path, r->ids);
  });
}

nprc_status nprc_report_write_json(const nprc_report* r, const char* path) {
  return guarded([&] {
    require(r && path, "arguments must not be NULL");
    write_report_json(r->report, path, r->ids);
  });
}

nprc_status nprc_fscore(const nprc_graph* g, const int64_t* predicted, size_t np,
                        const int64_t* truth, size_t nt, double* out) {
  return guarded([&] {
    require(g && out, "arguments must not be NULL");
    const Vertex n = g->graph.num_vertices();
    *out = fscore(VertexSet(g->graph, to_vertices(predicted, np, n)),
                  VertexSet(g->graph, to_vertices(truth, nt, n)));
  });
}

// -- validation -------------------------------------------------------------

nprc_status nprc_validate(const nprc_graph* g, const nprc_validate_options* o,
                          nprc_validation** out) {
  return guarded([&] {
    require(g && o && out, "arguments must not be NULL");
    require(o->p_count >= 1 && o->p_count <= NPRC_MAX_SCHEDULE, "p_count must be in 1..32");
    ValidateOptions opts;
    opts.beta = o->beta;
    opts.zeta = o->zeta;
    opts.seed_vertex = to_vertex(o->seed_vertex, g->graph.num_vertices());
    opts.p_values.assign(o->p_values, o->p_values + o->p_count);
    opts.rng_seed = o->rng_seed;
    require(o->dense_limit >= 0 && o->dense_limit <= std::numeric_limits<Vertex>::max(),
            "dense_limit out of range");
    opts.dense_limit = static_cast<Vertex>(o->dense_limit);
    opts.fd_step = o->fd_step;
    *out = new nprc_validation{validate_graph(g->graph, opts)};
  });
}

void nprc_validation_free(nprc_validation* v) { delete v; }
size_t nprc_validation_count(const nprc_validation* v) { return v ? v->report.checks.size() : 0; }
int32_t nprc_validation_all_passed(const nprc_validation* v) {
  return v && v->report.all_passed();
}

nprc_status nprc_validation_check(const nprc_validation* v, size_t i, const char** name,
                                  double* value, double* tolerance, int32_t* passed,
                                  int32_t* skipped) {
  return guarded([&] {
    require(v != nullptr && i < v->report.checks.size(), "check index out of range");
    const auto& c = v->report.checks[i];
    if (name) *name = c.name.c_str();
    if (value) *value = c.value;
    if (tolerance) *tolerance = c.tolerance;
    if (passed) *passed = c.passed;
    if (skipped) *skipped = c.skipped;
  });
}

}  // extern "C"
