#include "nprclust/eval.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

namespace nprc {

double fscore(const VertexSet& predicted, const VertexSet& truth) {
  if (truth.size() == 0) throw Error(ErrorCode::EmptyTruth, "ground-truth cluster is empty");
  if (predicted.universe() != truth.universe())
    throw Error(ErrorCode::DimensionMismatch, "sets cover different vertex ranges");
  std::size_t tp = 0;
  for (std::size_t v = 0; v < truth.universe(); ++v)
    if (predicted.mask()[v] && truth.mask()[v]) ++tp;
  if (tp == 0) return 0.0;
  const double precision = static_cast<double>(tp) / static_cast<double>(predicted.size());
  const double recall = static_cast<double>(tp) / static_cast<double>(truth.size());
  return 2.0 * precision * recall / (precision + recall);
}

VertexSet truth_cluster(const Graph& g, const std::vector<Label>& labels, Vertex seed) {
  if (labels.size() != static_cast<std::size_t>(g.num_vertices()))
    throw Error(ErrorCode::DimensionMismatch, "one label per vertex expected");
  VertexSet s(g);
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (labels[v] == labels[seed]) s.insert(g, v);
  return s;
}

const char* to_string(Method m) { return m == Method::Npr ? "npr" : "appr"; }

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  a.count = values.size();
  if (values.empty()) return a;
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return a;
}

void ExperimentReport::recompute() {
  std::vector<double> phis, fs;
  failures = 0;
  for (const auto& r : records) {
    if (!r.ok()) {
      ++failures;
      continue;
    }
    phis.push_back(r.phi);
    fs.push_back(r.fscore);
  }
  phi = aggregate(phis);
  fscore = aggregate(fs);
}

std::vector<Vertex> draw_seeds(const Graph& g, const std::vector<Label>& labels,
                               const Protocol& protocol) {
  if (protocol.repetitions < 1)
    throw Error(ErrorCode::InvalidArgument, "repetitions must be positive");
  std::vector<Vertex> seeds;
  if (!protocol.seed_vertices.empty()) {
    for (int i = 0; i < protocol.repetitions; ++i) {
      const Vertex s = protocol.seed_vertices[i % protocol.seed_vertices.size()];
      if (s < 0 || s >= g.num_vertices())
        throw Error(ErrorCode::InvalidArgument, "seed vertex out of range");
      seeds.push_back(s);
    }
    return seeds;
  }
  std::vector<Vertex> pool;
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    if (!protocol.restrict_label || labels[v] == *protocol.restrict_label) pool.push_back(v);
  if (pool.empty()) throw Error(ErrorCode::EmptyInput, "no vertex carries the requested label");
  std::mt19937_64 rng(protocol.rng_seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < protocol.repetitions; ++i) seeds.push_back(pool[pick(rng)]);
  return seeds;
}

namespace {

ExperimentRecord run_one(const Graph& g, const std::vector<Label>& labels,
                         const Protocol& protocol, int rep, Vertex seed) {
  ExperimentRecord rec;
  rec.repetition = rep;
  rec.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    const VertexSet truth = truth_cluster(g, labels, seed);
    rec.truth_size = truth.size();
    if (protocol.method == Method::Npr) {
      NprConfig cfg = protocol.npr;
      cfg.seed_vertex = seed;
      auto res = cluster_npr(g, cfg);
      for (std::size_t i = 0; i < res.solutions.size(); ++i) {
        PerPRecord pp;
        pp.p = res.solutions[i].p;
        pp.phi = res.profiles[i].best_phi;
        pp.fscore = fscore(VertexSet(g, res.profiles[i].best_members()), truth);
        pp.iterations = static_cast<int>(res.solutions[i].trace.iterations.size());
        pp.status = res.solutions[i].trace.status;
        rec.iterations += pp.iterations;
        rec.per_p.push_back(pp);
      }
      rec.best_p = res.best.p;
      rec.phi = res.best.phi;
      rec.cluster_size = res.best.members.size();
      rec.fscore = fscore(VertexSet(g, res.best.members), truth);
    } else {
      ApprConfig cfg = protocol.appr;
      cfg.seed_vertex = seed;
      auto res = cluster_appr(g, cfg);
      rec.iterations = static_cast<int>(res.push.pushes);
      rec.phi = res.best.phi;
      rec.cluster_size = res.best.members.size();
      rec.fscore = fscore(VertexSet(g, res.best.members), truth);
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

ExperimentReport run_experiment(const Graph& g, const std::vector<Label>& labels,
                                const Protocol& protocol) {
  if (labels.size() != static_cast<std::size_t>(g.num_vertices()))
    throw Error(ErrorCode::DimensionMismatch, "labels must cover every vertex");
  // Validate once up front so configuration mistakes fail the whole run.
  if (protocol.method == Method::Npr) {
    NprConfig probe = protocol.npr;
    probe.seed_vertex = 0;
    probe.validate(g.num_vertices());
  } else {
    ApprConfig probe = protocol.appr;
    probe.seed_vertex = 0;
    probe.validate(g.num_vertices());
  }
  const auto seeds = draw_seeds(g, labels, protocol);

  ExperimentReport report;
  report.method = protocol.method;
  report.records.resize(seeds.size());

  int workers = protocol.threads > 0 ? protocol.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(seeds.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++)
      report.records[i] = run_one(g, labels, protocol, static_cast<int>(i), seeds[i]);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  report.recompute();
  return report;
}

}  // namespace nprc
