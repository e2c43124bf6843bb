// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nprclust/nprclust.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(nprc_status st) {
  switch (st) {
    case NPRC_INVALID_ARGUMENT:
      return kExitUsage;
    case NPRC_DISCONNECTED_GRAPH:
    case NPRC_SELF_LOOP:
    case NPRC_DUPLICATE_EDGE:
    case NPRC_NONPOSITIVE_WEIGHT:
    case NPRC_EMPTY_OR_FULL_SET:
    case NPRC_DIMENSION_MISMATCH:
    case NPRC_PARSE_ERROR:
    case NPRC_IO_ERROR:
    case NPRC_EMPTY_INPUT:
    case NPRC_EMPTY_TRUTH:
    case NPRC_MISSING_LABELS:
      return kExitData;
    default:
      return kExitSolver;
  }
}

void check(nprc_status st, const std::string& context) {
  if (st != NPRC_OK)
    throw Failure{exit_code_for(st), context + ": " + nprc_last_error() + " [" +
                                         nprc_status_name(st) + "]"};
}

// JSON config files: a flat object keyed by long option names. Items are
// routed to whichever subcommand was selected on the command line.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<std::string> parents;
    if (auto subs = root_->get_subcommands(); !subs.empty()) parents.push_back(subs.front()->get_name());
    std::vector<CLI::ConfigItem> items;
    for (auto it = j.begin(); it != j.end(); ++it) {
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      if (it->is_array()) {
        for (const auto& v : *it) item.inputs.push_back(scalar(it.key(), v));
      } else if (!it->is_null()) {
        item.inputs.push_back(scalar(it.key(), *it));
      } else {
        continue;
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  static std::string scalar(const std::string& key, const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("unsupported value for config key '" + key + "'");
  }

  const CLI::App* root_;
};

// Remembers every registered option so the resolved configuration can be
// written back out in the same format the config loader reads.
class Registry {
 public:
  explicit Registry(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* option(const std::string& name, T& var, const std::string& desc) {
    auto* o = app_->add_option("--" + name, var, desc)->capture_default_str();
    items_.emplace_back(name, [&var] { return json(var); });
    return o;
  }

  template <class T>
  CLI::Option* optional(const std::string& name, std::optional<T>& var, const std::string& desc) {
    auto* o = app_->add_option("--" + name, var, desc);
    items_.emplace_back(name, [&var] { return var ? json(*var) : json(nullptr); });
    return o;
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& desc) {
    auto* o = app_->add_flag("--" + name, var, desc);
    items_.emplace_back(name, [&var] { return json(var); });
    return o;
  }

  json resolved() const {
    json j = json::object();
    for (const auto& [name, get] : items_) {
      json v = get();
      if (!v.is_null()) j[name] = v;
    }
    return j;
  }

  CLI::App* app() const { return app_; }

 private:
  CLI::App* app_;
  std::vector<std::pair<std::string, std::function<json()>>> items_;
};

CLI::App* subcommand(CLI::App& app, const std::string& name, const std::string& desc) {
  auto* sub = app.add_subcommand(name, desc);
  return sub;
}

fs::path prepare_out(const std::string& out) {
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kExitData, "cannot create output directory " + out + ": " + ec.message()};
  return dir;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  f << j.dump(2) << '\n';
  if (!f) throw Failure{kExitData, "cannot write " + path.string()};
}

std::string p_tag(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "p%.4g", p);
  return buf;
}

// RAII holders for C handles.
template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};
using GraphHandle = Handle<nprc_graph, nprc_graph_free>;
using PointsHandle = Handle<nprc_points, nprc_points_free>;
using NprHandle = Handle<nprc_npr_result, nprc_npr_result_free>;
using ApprHandle = Handle<nprc_appr_result, nprc_appr_result_free>;
using ReportHandle = Handle<nprc_report, nprc_report_free>;
using ValidationHandle = Handle<nprc_validation, nprc_validation_free>;

template <class T, class F>
std::vector<T> fetch(F&& f) {
  size_t len = 0;
  check(f(nullptr, 0, &len), "query");
  std::vector<T> out(len);
  if (len) check(f(out.data(), out.size(), &len), "copy");
  return out;
}

// -- shared option groups ---------------------------------------------------

struct GraphArgs {
  std::string graph;
  std::string labels;
  std::string lfr_network;
  std::string lfr_community;

  void add(Registry& r) {
    r.option("graph", graph, "edge list: u<TAB>v<TAB>w per line, zero-based ids, '#' comments");
    r.option("labels", labels, "label file: one integer per line, line i = vertex i");
    r.option("lfr-network", lfr_network, "LFR network.dat (1-based), used with --lfr-community");
    r.option("lfr-community", lfr_community, "LFR community.dat (1-based)");
  }

  void load(GraphHandle& g) const {
    if (!lfr_network.empty() || !lfr_community.empty()) {
      if (lfr_network.empty() || lfr_community.empty())
        throw Failure{kExitUsage, "--lfr-network and --lfr-community go together"};
      check(nprc_graph_load_lfr(lfr_network.c_str(), lfr_community.c_str(), g.out()),
            "loading LFR pair");
    } else if (!graph.empty()) {
      check(nprc_graph_load_edge_list(graph.c_str(), g.out()), "loading " + graph);
    } else {
      throw Failure{kExitUsage, "a graph is required (--graph or --lfr-network/--lfr-community)"};
    }
    if (!labels.empty()) check(nprc_graph_load_labels(g.get(), labels.c_str()), "loading labels");
  }
};

struct NprArgs {
  nprc_npr_config cfg{};
  std::vector<double> schedule;
  std::string pin_length = "inverse-weight";
  int64_t dense_limit = 0;
  std::optional<int> beta_for_groups;
  CLI::Option* beta_opt = nullptr;

  NprArgs() {
    nprc_npr_config_default(&cfg);
    schedule.assign(cfg.p_schedule, cfg.p_schedule + cfg.p_count);
    dense_limit = cfg.dense_limit;
  }

  void add(Registry& r) {
    beta_opt = r.option("beta", cfg.beta, "teleport scaling beta in (0,1)");
    r.optional("beta-for-groups", beta_for_groups,
               "use the Gaussian-grouping beta preset for this many groups unless --beta is set "
               "(<=5: 1e-4, <=13: 1e-3, else 5e-3)");
    r.option("zeta", cfg.zeta, "smoothing inside the Hadamard power; 0 = 1e-6 if n >= 1e4 else 1e-11");
    r.option("p-schedule", schedule, "decreasing p values in (1,2)")->expected(1, NPRC_MAX_SCHEDULE);
    r.option("fixed-value", cfg.fixed_value, "value held at the vertex furthest from the seed");
    r.option("grad-tol", cfg.grad_tol, "gradient max-norm tolerance");
    r.option("step-tol", cfg.step_tol, "relative step tolerance");
    r.option("max-iters", cfg.max_iters, "iteration cap per p value");
    r.option("lambda0-factor", cfg.lambda0_factor, "initial damping factor times max diag(J^T J)");
    r.option("pin-length", pin_length, "edge length for the furthest-vertex search")
        ->check(CLI::IsMember({"inverse-weight", "weight"}));
    r.option("dense-limit", dense_limit, "largest vertex count for the dense Jacobian");
  }

  nprc_npr_config resolve(int64_t seed_vertex) {
    if (beta_for_groups && beta_opt->count() == 0)
      cfg.beta = nprc_gaussian_beta_preset(*beta_for_groups);
    if (schedule.size() > NPRC_MAX_SCHEDULE)
      throw Failure{kExitUsage, "p schedule holds at most 32 values"};
    cfg.p_count = schedule.size();
    std::copy(schedule.begin(), schedule.end(), cfg.p_schedule);
    cfg.pin_length = pin_length == "weight" ? NPRC_LENGTH_WEIGHT : NPRC_LENGTH_INVERSE_WEIGHT;
    cfg.dense_limit = dense_limit;
    cfg.seed_vertex = seed_vertex;
    return cfg;
  }
};

struct ApprArgs {
  nprc_appr_config cfg{};
  ApprArgs() { nprc_appr_config_default(&cfg); }
  void add(Registry& r) {
    r.option("alpha", cfg.alpha, "APPR damping factor (teleport probability is 1 - alpha)");
    r.option("epsilon", cfg.epsilon, "APPR push tolerance per unit degree; 0 = 1e-6/n");
  }
};

// -- subcommands ------------------------------------------------------------

struct GenGauss {
  int groups = 8;
  int per_group = 100;
  double variance = 0.055;
  double grid_spacing = 1.0;
  uint64_t rng_seed = 1;
  std::string out = "out";

  void add(Registry& r) {
    r.option("groups", groups, "number of Gaussian groupings")->check(CLI::PositiveNumber);
    r.option("per-group", per_group, "points per grouping")->check(CLI::PositiveNumber);
    r.option("variance", variance, "per-coordinate variance");
    r.option("grid-spacing", grid_spacing, "distance between neighbouring centres");
    r.option("rng-seed", rng_seed, "random seed");
    r.option("out", out, "output directory");
  }

  int run(const Registry& r) {
    PointsHandle pc;
    check(nprc_points_gaussian(groups, per_group, variance, grid_spacing, rng_seed, pc.out()),
          "generating points");
    auto dir = prepare_out(out);
    check(nprc_points_save(pc.get(), (dir / "points.csv").c_str(), (dir / "labels.txt").c_str()),
          "writing points");
    write_json(dir / "resolved_config.json", r.resolved());
    std::cout << "points: " << nprc_points_size(pc.get()) << "  beta preset for " << groups
              << " groups: " << nprc_gaussian_beta_preset(groups) << '\n';
    return 0;
  }
};

struct BuildKnn {
  std::string points;
  std::string labels;
  int k = 10;
  std::string out = "out";

  void add(Registry& r) {
    r.option("points", points, "points CSV, one comma-separated row per point")->required();
    r.option("labels", labels, "optional point labels, one per line");
    r.option("k", k, "neighbours per point")->check(CLI::PositiveNumber);
    r.option("out", out, "output directory");
  }

  int run(const Registry& r) {
    PointsHandle pc;
    check(nprc_points_load(points.c_str(), labels.empty() ? nullptr : labels.c_str(), pc.out()),
          "loading points");
    GraphHandle g;
    check(nprc_graph_build_knn(pc.get(), k, g.out()), "building kNN graph");
    auto dir = prepare_out(out);
    check(nprc_graph_save_edge_list(g.get(), (dir / "graph.tsv").c_str()), "writing graph");
    check(nprc_graph_save_source_ids(g.get(), (dir / "vertex_ids.txt").c_str()), "writing ids");
    if (nprc_graph_has_labels(g.get()))
      check(nprc_graph_save_labels(g.get(), (dir / "labels.txt").c_str()), "writing labels");
    write_json(dir / "resolved_config.json", r.resolved());
    std::cout << "vertices: " << nprc_graph_num_vertices(g.get())
              << "  edges: " << nprc_graph_num_edges(g.get())
              << "  dropped: " << nprc_graph_dropped_vertices(g.get()) << '\n';
    return 0;
  }
};

struct BuildCost {
  std::string costs;
  bool symmetric_iota = false;
  std::string out = "out";

  void add(Registry& r) {
    r.option("costs", costs, "cost CSV with header: u,v,cost")->required();
    r.flag("symmetric-iota", symmetric_iota,
           "use max(iota(u), iota(v)) instead of averaging the two one-sided kernels");
    r.option("out", out, "output directory");
  }

  int run(const Registry& r) {
    GraphHandle g;
    check(nprc_graph_build_cost(costs.c_str(),
                                symmetric_iota ? NPRC_IOTA_MAX : NPRC_IOTA_AVERAGE_SIDES, g.out()),
          "building cost graph");
    auto dir = prepare_out(out);
    check(nprc_graph_save_edge_list(g.get(), (dir / "graph.tsv").c_str()), "writing graph");
    check(nprc_graph_save_source_ids(g.get(), (dir / "vertex_ids.txt").c_str()), "writing ids");
    write_json(dir / "resolved_config.json", r.resolved());
    std::cout << "vertices: " << nprc_graph_num_vertices(g.get())
              << "  edges: " << nprc_graph_num_edges(g.get())
              << "  dropped: " << nprc_graph_dropped_vertices(g.get()) << '\n';
    return 0;
  }
};

std::optional<double> seed_fscore(const nprc_graph* g, int64_t seed,
                                  const std::vector<int64_t>& members) {
  if (!nprc_graph_has_labels(g)) return std::nullopt;
  auto labels = fetch<int64_t>(
      [&](int64_t* b, size_t c, size_t* l) { return nprc_graph_labels(g, b, c, l); });
  if (seed < 0 || static_cast<size_t>(seed) >= labels.size()) return std::nullopt;
  std::vector<int64_t> truth;
  for (size_t v = 0; v < labels.size(); ++v)
    if (labels[v] == labels[static_cast<size_t>(seed)]) truth.push_back(static_cast<int64_t>(v));
  double f = 0.0;
  check(nprc_fscore(g, members.data(), members.size(), truth.data(), truth.size(), &f), "fscore");
  return f;
}

struct Solve {
  GraphArgs graph;
  NprArgs npr;
  int64_t seed_vertex = 0;
  std::string out = "out";

  void add(Registry& r) {
    graph.add(r);
    r.option("seed-vertex", seed_vertex, "starting vertex s")->required();
    npr.add(r);
    r.option("out", out, "output directory");
  }

  int run(const Registry& r) {
    GraphHandle g;
    graph.load(g);
    nprc_npr_config cfg = npr.resolve(seed_vertex);
    NprHandle res;
    check(nprc_npr_solve(g.get(), &cfg, res.out()), "NPR solve");
    auto dir = prepare_out(out);

    json per_p = json::array();
    bool all_converged = true;
    for (size_t i = 0; i < nprc_npr_count(res.get()); ++i) {
      const double p = nprc_npr_p(res.get(), i);
      const std::string tag = p_tag(p);
      check(nprc_npr_write_solution(res.get(), i, (dir / ("solution_" + tag + ".csv")).c_str()),
            "writing solution");
      check(nprc_npr_write_trace(res.get(), i, (dir / ("trace_" + tag + ".jsonl")).c_str()),
            "writing trace");
      check(nprc_npr_write_profile(res.get(), i, (dir / ("profile_" + tag + ".csv")).c_str()),
            "writing profile");
      const int status = nprc_npr_lm_status(res.get(), i);
      all_converged = all_converged && status == NPRC_LM_CONVERGED;
      per_p.push_back({{"p", p},
                       {"status", status == NPRC_LM_CONVERGED       ? "converged"
                                  : status == NPRC_LM_ITERATION_CAP ? "iteration_cap"
                                                                    : "stall"},
                       {"iterations", nprc_npr_iterations(res.get(), i)},
                       {"final_psi", nprc_npr_final_psi(res.get(), i)},
                       {"final_grad_norm", nprc_npr_final_grad_norm(res.get(), i)},
                       {"phi", nprc_npr_sweep_phi(res.get(), i)}});
    }
    check(nprc_npr_write_members(res.get(), (dir / "cluster.txt").c_str()), "writing cluster");
    auto members = fetch<int64_t>([&](int64_t* b, size_t c, size_t* l) {
      return nprc_npr_best_members(res.get(), b, c, l);
    });
    json summary = {{"seed_vertex", seed_vertex},
                    {"beta", cfg.beta},
                    {"pinned_vertex", nprc_npr_pinned_vertex(res.get())},
                    {"best_p", nprc_npr_best_p(res.get())},
                    {"phi", nprc_npr_best_phi(res.get())},
                    {"cluster_size", members.size()},
                    {"per_p", per_p}};
    if (auto f = seed_fscore(g.get(), seed_vertex, members)) summary["fscore"] = *f;
    write_json(dir / "summary.json", summary);
    write_json(dir / "resolved_config.json", r.resolved());

    std::cout << "best p: " << nprc_npr_best_p(res.get())
              << "  phi: " << nprc_npr_best_phi(res.get()) << "  size: " << members.size();
    if (summary.contains("fscore")) std::cout << "  fscore: " << summary["fscore"].get<double>();
    std::cout << '\n';
    if (!all_converged) {
      std::cerr << "warning: at least one p value stopped without converging; see summary.json\n";
      return kExitSolver;
    }
    return 0;
  }
};

struct Appr {
  GraphArgs graph;
  ApprArgs appr;
  int64_t seed_vertex = 0;
  std::string out = "out";

  void add(Registry& r) {
    graph.add(r);
    r.option("seed-vertex", seed_vertex, "starting vertex s")->required();
    appr.add(r);
    r.option("out", out, "output directory");
  }

  int run(const Registry& r) {
    GraphHandle g;
    graph.load(g);
    nprc_appr_config cfg = appr.cfg;
    cfg.seed_vertex = seed_vertex;
    ApprHandle res;
    check(nprc_appr_solve(g.get(), &cfg, res.out()), "APPR");
    auto dir = prepare_out(out);
    check(nprc_appr_write_vector(res.get(), (dir / "vector.csv").c_str()), "writing vector");
    check(nprc_appr_write_profile(res.get(), (dir / "profile.csv").c_str()), "writing profile");
    check(nprc_appr_write_members(res.get(), (dir / "cluster.txt").c_str()), "writing cluster");
    auto members = fetch<int64_t>([&](int64_t* b, size_t c, size_t* l) {
      return nprc_appr_best_members(res.get(), b, c, l);
    });
    json summary = {{"seed_vertex", seed_vertex},
                    {"pushes", nprc_appr_pushes(res.get())},
                    {"phi", nprc_appr_best_phi(res.get())},
                    {"cluster_size", members.size()}};
    if (auto f = seed_fscore(g.get(), seed_vertex, members)) summary["fscore"] = *f;
    write_json(dir / "summary.json", summary);
    write_json(dir / "resolved_config.json", r.resolved());
    std::cout << "phi: " << nprc_appr_best_phi(res.get()) << "  size: " << members.size();
    if (summary.contains("fscore")) std::cout << "  fscore: " << summary["fscore"].get<double>();
    std::cout << '\n';
    return 0;
  }
};

int default_threads() {
  if (const char* env = std::getenv("NPR_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
  }
  return 0;
}

struct Experiment {
  GraphArgs graph;
  NprArgs npr;
  ApprArgs appr;
  std::string method = "npr";
  int reps = 50;
  uint64_t rng_seed = 1;
  int threads = default_threads();
  std::optional<int64_t> restrict_label;
  std::vector<int64_t> seed_vertices;
  std::string out = "out";

  void add(Registry& r) {
    graph.add(r);
    r.option("method", method, "npr or appr")->check(CLI::IsMember({"npr", "appr"}));
    r.option("reps", reps, "repetitions (random seed vertices)")->check(CLI::PositiveNumber);
    r.option("rng-seed", rng_seed, "seed for drawing seed vertices");
    r.option("threads", threads, "worker threads; 0 = available parallelism (env NPR_THREADS)");
    r.optional("restrict-label", restrict_label, "draw seed vertices only from this label");
    r.option("seed-vertices", seed_vertices, "fixed seed vertices instead of random draws");
    npr.add(r);
    appr.add(r);
    r.option("out", out, "output directory");
  }

  int run(const Registry& r) {
    GraphHandle g;
    graph.load(g);
    nprc_protocol proto;
    nprc_protocol_default(&proto);
    proto.repetitions = reps;
    proto.rng_seed = rng_seed;
    proto.method = method == "appr" ? NPRC_METHOD_APPR : NPRC_METHOD_NPR;
    proto.npr = npr.resolve(0);
    proto.appr = appr.cfg;
    proto.restrict_label_enabled = restrict_label.has_value();
    proto.restrict_label = restrict_label.value_or(0);
    proto.seed_vertices = seed_vertices.empty() ? nullptr : seed_vertices.data();
    proto.seed_count = seed_vertices.size();
    proto.threads = threads;
    ReportHandle rep;
    check(nprc_experiment_run(g.get(), &proto, rep.out()), "experiment");
    auto dir = prepare_out(out);
    check(nprc_report_write_csv(rep.get(), (dir / "report.csv").c_str()), "writing report");
    check(nprc_report_write_json(rep.get(), (dir / "report.json").c_str()), "writing report");
    write_json(dir / "resolved_config.json", r.resolved());
    const size_t failures = nprc_report_failures(rep.get());
    std::cout << method << ": " << nprc_report_count(rep.get()) << " runs, " << failures
              << " failed  phi " << nprc_report_phi_mean(rep.get()) << " +- "
              << nprc_report_phi_std(rep.get()) << "  fscore "
              << nprc_report_fscore_mean(rep.get()) << " +- "
              << nprc_report_fscore_std(rep.get()) << '\n';
    for (size_t i = 0; i < nprc_report_count(rep.get()); ++i)
      if (const char* err = nprc_report_error(rep.get(), i))
        std::cerr << "repetition " << i << " (seed " << nprc_report_seed(rep.get(), i)
                  << "): " << err << '\n';
    return failures == nprc_report_count(rep.get()) ? kExitSolver : 0;
  }
};

struct Validate {
  GraphArgs graph;
  nprc_validate_options opts{};
  std::vector<double> p_values;
  int64_t dense_limit = 0;
  std::string out;

  Validate() {
    nprc_validate_options_default(&opts);
    p_values.assign(opts.p_values, opts.p_values + opts.p_count);
    dense_limit = opts.dense_limit;
  }

  void add(Registry& r) {
    graph.add(r);
    r.option("beta", opts.beta, "beta for T");
    r.option("zeta", opts.zeta, "smoothing for f and J");
    r.option("seed-vertex", opts.seed_vertex, "seed for the linear-regime check");
    r.option("p-values", p_values, "p values for the Jacobian checks")
        ->expected(1, NPRC_MAX_SCHEDULE);
    r.option("rng-seed", opts.rng_seed, "seed for the random evaluation point and sign flips");
    r.option("dense-limit", dense_limit, "skip dense checks above this vertex count");
    r.option("fd-step", opts.fd_step, "central-difference step");
    r.option("out", out, "optional output directory for validation.json");
  }

  int run(const Registry& r) {
    GraphHandle g;
    graph.load(g);
    if (p_values.size() > NPRC_MAX_SCHEDULE) throw Failure{kExitUsage, "at most 32 p values"};
    opts.p_count = p_values.size();
    std::copy(p_values.begin(), p_values.end(), opts.p_values);
    opts.dense_limit = dense_limit;
    ValidationHandle v;
    check(nprc_validate(g.get(), &opts, v.out()), "validation");
    json checks = json::array();
    for (size_t i = 0; i < nprc_validation_count(v.get()); ++i) {
      const char* name = nullptr;
      double value = 0, tol = 0;
      int32_t passed = 0, skipped = 0;
      check(nprc_validation_check(v.get(), i, &name, &value, &tol, &passed, &skipped), "check");
      const char* verdict = skipped ? "SKIP" : passed ? "PASS" : "FAIL";
      std::printf("%-4s %-24s value=%-12.4g tolerance=%g\n", verdict, name, value, tol);
      checks.push_back({{"name", name},
                        {"value", value},
                        {"tolerance", tol},
                        {"passed", passed != 0},
                        {"skipped", skipped != 0}});
    }
    if (!out.empty()) {
      auto dir = prepare_out(out);
      write_json(dir / "validation.json", {{"checks", checks}});
      write_json(dir / "resolved_config.json", r.resolved());
    }
    return nprc_validation_all_passed(v.get()) ? 0 : kExitSolver;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local graph clustering with the nonlinear modified PageRank problem.\n"
               "Exit codes: 0 ok, 1 usage error, 2 data error, 3 solver or validation failure.\n"
               "Environment: NPR_THREADS sets the default worker count of `experiment`.",
               "nprclust"};
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "",
                 "JSON object of option values keyed by long option name (no dashes), e.g. the "
                 "resolved_config.json of an earlier run; flags on the command line win");
  app.set_version_flag("--version", nprc_version());

  GenGauss gen;
  BuildKnn knn;
  BuildCost cost;
  Solve solve;
  Appr appr;
  Experiment experiment;
  Validate validate;

  Registry r_gen(subcommand(app, "gen-gauss", "generate Gaussian groupings on a square grid"));
  Registry r_knn(subcommand(app, "build-knn", "kNN similarity graph from a points CSV"));
  Registry r_cost(subcommand(app, "build-cost", "similarity graph from a travel-cost table"));
  Registry r_solve(subcommand(app, "solve", "NPR continuation and sweep for one seed vertex"));
  Registry r_appr(subcommand(app, "appr", "approximate personalized PageRank and sweep"));
  Registry r_exp(subcommand(app, "experiment", "repeated random-seed evaluation against labels"));
  Registry r_val(subcommand(app, "validate", "run the invariant suite on a graph"));
  gen.add(r_gen);
  knn.add(r_knn);
  cost.add(r_cost);
  solve.add(r_solve);
  appr.add(r_appr);
  experiment.add(r_exp);
  validate.add(r_val);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (r_gen.app()->parsed()) return gen.run(r_gen);
    if (r_knn.app()->parsed()) return knn.run(r_knn);
    if (r_cost.app()->parsed()) return cost.run(r_cost);
    if (r_solve.app()->parsed()) return solve.run(r_solve);
    if (r_appr.app()->parsed()) return appr.run(r_appr);
    if (r_exp.app()->parsed()) return experiment.run(r_exp);
    if (r_val.app()->parsed()) return validate.run(r_val);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}
