#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "nprclust/error.hpp"
#include "nprclust/eval.hpp"
#include "nprclust/io.hpp"
#include "nprclust/sweep.hpp"
#include "oracles.hpp"

using namespace nprc;

namespace {

Graph path(int n) {
  std::vector<Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.push_back({v, v + 1, 1.0});
  return Graph::build(e);
}

VertexSet set_of(const Graph& g, std::vector<Vertex> m) { return VertexSet(g, m); }

// Two dense blobs joined by one light edge.
Graph two_blobs(std::vector<Label>& labels) {
  std::vector<Edge> e;
  for (int b = 0; b < 2; ++b)
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) e.push_back({6 * b + i, 6 * b + j, 1.0});
  e.push_back({5, 6, 0.1});
  labels.assign(12, 0);
  for (int v = 6; v < 12; ++v) labels[v] = 1;
  return Graph::build(e);
}

}  // namespace

TEST_CASE("fscore") {
  Graph g = path(6);
  CHECK(fscore(set_of(g, {0, 1, 2}), set_of(g, {0, 1, 2})) == 1.0);
  CHECK(fscore(set_of(g, {0, 1}), set_of(g, {3, 4})) == 0.0);
  CHECK(fscore(set_of(g, {0, 1, 2}), set_of(g, {1, 2, 3})) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(fscore(set_of(g, {0}), VertexSet(g)), Error);
}

TEST_CASE("aggregate uses the sample standard deviation") {
  Aggregate a = aggregate({1.0, 2.0, 3.0, 4.0});
  CHECK(a.mean == 2.5);
  CHECK(a.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(a.count == 4);
  CHECK(aggregate({7.0}).stddev == 0.0);
}

TEST_CASE("truth cluster follows the seed's label") {
  std::vector<Label> labels;
  Graph g = two_blobs(labels);
  VertexSet t = truth_cluster(g, labels, 8);
  CHECK(t.size() == 6);
  CHECK(t.contains(11));
  CHECK_FALSE(t.contains(0));
}

TEST_CASE("experiment protocol") {
  std::vector<Label> labels;
  Graph g = two_blobs(labels);

  Protocol one;
  one.repetitions = 1;
  one.seed_vertices = {3};
  ExperimentReport r1 = run_experiment(g, labels, one);
  REQUIRE(r1.records.size() == 1);
  CHECK(r1.records[0].seed == 3);
  CHECK(r1.records[0].ok());
  CHECK(r1.records[0].fscore == 1.0);
  CHECK(r1.records[0].per_p.size() == one.npr.p_schedule.size());

  Protocol many;
  many.repetitions = 6;
  many.rng_seed = 5;
  many.threads = 3;
  ExperimentReport a = run_experiment(g, labels, many);
  many.threads = 1;
  ExperimentReport b = run_experiment(g, labels, many);
  REQUIRE(a.records.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.records[i].seed == b.records[i].seed);
    CHECK(a.records[i].phi == b.records[i].phi);
    CHECK(a.records[i].fscore == b.records[i].fscore);
  }
  CHECK(a.phi.mean == b.phi.mean);

  many.restrict_label = 1;
  for (Vertex s : draw_seeds(g, labels, many)) CHECK(labels[s] == 1);
  many.restrict_label = 7;
  CHECK_THROWS_AS(draw_seeds(g, labels, many), Error);

  Protocol appr;
  appr.method = Method::Appr;
  appr.repetitions = 4;
  ExperimentReport ra = run_experiment(g, labels, appr);
  CHECK(ra.records.size() == 4);
  CHECK(ra.fscore.mean == doctest::Approx(1.0));
  CHECK(ra.records[0].best_p == 0.0);
}

TEST_CASE("failed repetitions are recorded, not fatal") {
  std::vector<Label> labels;
  Graph g = two_blobs(labels);
  Protocol p;
  p.repetitions = 2;
  p.seed_vertices = {0, 1};
  p.npr.dense_limit = 4;  // forces SizeExceeded inside every run
  ExperimentReport r = run_experiment(g, labels, p);
  CHECK(r.failures == 2);
  CHECK_FALSE(r.records[0].ok());
}

TEST_CASE("report writers") {
  std::vector<Label> labels;
  Graph g = two_blobs(labels);
  Protocol p;
  p.repetitions = 3;
  ExperimentReport r = run_experiment(g, labels, p);
  auto dir = std::filesystem::temp_directory_path() / "nprclust_unit";
  std::filesystem::create_directories(dir);
  write_report_csv(r, (dir / "r.csv").string());
  std::ifstream in(dir / "r.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "repetition,seed,best_p,phi,fscore,iterations,wall_seconds,cluster_size,truth_size,error");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3 + 2);

  auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["records"].size() == 3);
  CHECK(j["fscore"]["mean"].get<double>() == r.fscore.mean);
  CHECK(j["records"][0]["per_p"].size() == p.npr.p_schedule.size());

  NprSolution sol = NprProblem(g, p.npr).lm_solve(1.9, Vector::Zero(12));
  std::istringstream trace(trace_jsonl(sol.trace));
  int n = 0;
  while (std::getline(trace, line)) {
    auto it = nlohmann::json::parse(line);
    CHECK(it.contains("psi"));
    CHECK(it.contains("lambda"));
    ++n;
  }
  CHECK(n == static_cast<int>(sol.trace.iterations.size()));
}

TEST_CASE("profile and solution writers map vertices to source ids") {
  Graph c4 = Graph::build({{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}});
  Vector x(4);
  x << 3, 2, 1, 0;
  SweepProfile prof = sweep_cut(c4, x);
  auto dir = std::filesystem::temp_directory_path() / "nprclust_unit";
  std::filesystem::create_directories(dir);
  const std::vector<std::int64_t> ids{40, 41, 42, 43};
  write_profile_csv(prof, (dir / "p.csv").string(), ids);
  std::ifstream in(dir / "p.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "j,vertex_id,phi");
  std::getline(in, line);
  CHECK(line.rfind("1,40,", 0) == 0);
  std::getline(in, line);
  CHECK(line.rfind("2,41,0.5", 0) == 0);

  write_members({1, 3}, (dir / "m.txt").string(), ids);
  std::ifstream m(dir / "m.txt");
  std::int64_t a = 0, b = 0;
  m >> a >> b;
  CHECK(a == 41);
  CHECK(b == 43);

  write_solution_csv(x, (dir / "s.csv").string());
  std::ifstream s(dir / "s.csv");
  std::getline(s, line);
  CHECK(line == "vertex_id,value");
  std::getline(s, line);
  CHECK(line == "0,3");
}
