#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "nprclust/data.hpp"
#include "nprclust/error.hpp"

using namespace nprc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "nprclust_unit";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

double weight(const Graph& g, Vertex u, Vertex v) {
  for (const auto& e : g.edges())
    if (e.u == std::min(u, v) && e.v == std::max(u, v)) return e.w;
  return -1.0;
}

}  // namespace

TEST_CASE("Gaussian groupings") {
  PointCloud one = gen_gaussian_groupings(1, 2000, 0.055, 1.0, 3);
  CHECK(one.size() == 2000);
  CHECK(one.dim == 2);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one.labels[i] == 0);
    mx += one.point(i)[0];
    my += one.point(i)[1];
  }
  auto [cx, cy] = gaussian_group_centre(1, 0, 1.0);
  // Standard error of the mean is sqrt(0.055 / 2000) ~ 0.005.
  CHECK(std::abs(mx / 2000 - cx) < 0.03);
  CHECK(std::abs(my / 2000 - cy) < 0.03);

  PointCloud eight = gen_gaussian_groupings(8, 400, 0.055, 1.0, 1);
  CHECK(eight.size() == 3200);
  std::set<Label> labels(eight.labels.begin(), eight.labels.end());
  CHECK(labels.size() == 8);

  PointCloud again = gen_gaussian_groupings(8, 400, 0.055, 1.0, 1);
  CHECK(again.coords == eight.coords);
  CHECK(again.labels == eight.labels);
  CHECK(gen_gaussian_groupings(8, 400, 0.055, 1.0, 2).coords != eight.coords);
}

TEST_CASE("beta presets") {
  CHECK(gaussian_beta_preset(2) == 1e-4);
  CHECK(gaussian_beta_preset(5) == 1e-4);
  CHECK(gaussian_beta_preset(8) == 1e-3);
  CHECK(gaussian_beta_preset(13) == 1e-3);
  CHECK(gaussian_beta_preset(20) == 5e-3);
}

TEST_CASE("kNN graph on collinear points") {
  PointCloud pc;
  pc.dim = 2;
  pc.coords = {0, 0, 1, 0, 3, 0};
  BuiltGraph bg = build_knn_graph(pc, 1);
  const Graph& g = bg.graph;
  REQUIRE(g.num_edges() == 2);
  // Point 2's nearest neighbour is point 1 at distance 2, so nu = 2 there.
  CHECK(weight(g, 0, 1) == doctest::Approx(std::exp(-4.0)));
  CHECK(weight(g, 1, 2) == doctest::Approx(std::exp(-4.0 * 4.0 / 4.0)));
  CHECK(weight(g, 0, 2) == -1.0);
}

TEST_CASE("kNN weights use the larger neighbour radius") {
  PointCloud pc;
  pc.dim = 1;
  pc.coords = {0.0, 1.0, 3.0, 7.0};
  BuiltGraph bg = build_knn_graph(pc, 2);
  // Second-neighbour radii: 3, 2, 3, 6.
  const Graph& g = bg.graph;
  CHECK(g.num_edges() == 5);
  CHECK(weight(g, 0, 1) == doctest::Approx(std::exp(-4.0 / 9.0)));
  CHECK(weight(g, 0, 2) == doctest::Approx(std::exp(-4.0)));
  CHECK(weight(g, 1, 2) == doctest::Approx(std::exp(-16.0 / 9.0)));
  CHECK(weight(g, 2, 3) == doctest::Approx(std::exp(-64.0 / 36.0)));
  CHECK(weight(g, 1, 3) == doctest::Approx(std::exp(-4.0)));
  CHECK(weight(g, 0, 3) == -1.0);
}

TEST_CASE("coincident points get a finite weight") {
  PointCloud pc;
  pc.dim = 2;
  pc.coords = {0, 0, 0, 0, 1, 1};
  BuiltGraph bg = build_knn_graph(pc, 1);
  for (const auto& e : bg.graph.edges()) CHECK(std::isfinite(e.w));
  CHECK(weight(bg.graph, 0, 1) == 1.0);
}

TEST_CASE("kNN keeps the largest component") {
  PointCloud pc;
  pc.dim = 1;
  pc.coords = {0.0, 0.1, 0.2, 100.0, 100.1};
  BuiltGraph bg = build_knn_graph(pc, 1);
  CHECK(bg.graph.num_vertices() == 3);
  CHECK(bg.dropped_vertices == 2);
  CHECK(bg.source_ids == std::vector<std::int64_t>{0, 1, 2});
}

TEST_CASE("cost graph") {
  CostTable two{{10, 20, 2.0}, {20, 10, 4.0}};
  BuiltGraph g2 = build_cost_graph(two);
  REQUIRE(g2.graph.num_edges() == 1);
  // chi = 3 and both sides have iota = 3.
  CHECK(g2.graph.edges()[0].w == doctest::Approx(std::exp(-2.0)));
  CHECK(g2.source_ids == std::vector<std::int64_t>{10, 20});

  CostTable sym{{0, 1, 1.0}, {1, 0, 1.0}, {0, 2, 3.0}, {2, 0, 3.0}};
  CostTable one_way{{0, 1, 1.0}, {0, 2, 3.0}};
  BuiltGraph a = build_cost_graph(sym), b = build_cost_graph(one_way);
  CHECK(weight(a.graph, 0, 1) == weight(b.graph, 0, 1));
  // iota(0) = 2, iota(1) = 1, iota(2) = 3.
  CHECK(weight(a.graph, 0, 1) ==
        doctest::Approx(0.5 * (std::exp(-2.0 / 4.0) + std::exp(-2.0 / 1.0))));
  BuiltGraph m = build_cost_graph(sym, IotaMode::MaxIota);
  CHECK(weight(m.graph, 0, 1) == doctest::Approx(std::exp(-2.0 / 4.0)));
}

TEST_CASE("edge list round trip and parse errors") {
  Graph g = Graph::build({{0, 1, 0.1}, {1, 2, 1.0 / 3.0}, {0, 2, 2.5e-7}});
  auto p = scratch("g.tsv");
  save_edge_list(g, p.string());
  Graph back = load_edge_list(p.string());
  REQUIRE(back.num_edges() == g.num_edges());
  for (std::size_t k = 0; k < g.num_edges(); ++k) {
    CHECK(back.edges()[k].u == g.edges()[k].u);
    CHECK(back.edges()[k].v == g.edges()[k].v);
    CHECK(back.edges()[k].w == g.edges()[k].w);
  }

  auto bad = scratch("bad.tsv");
  write(bad, "# header\n0\t1\t1\n1\tx\t2\n");
  try {
    load_edge_list(bad.string());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  write(bad, "0 1 1\n1 2 3 4\n");
  try {
    load_edge_list(bad.string());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_edge_list(scratch("missing.tsv").string()), Error);
}

TEST_CASE("points and labels round trip") {
  PointCloud pc = gen_gaussian_groupings(2, 5, 0.055, 1.0, 4);
  auto p = scratch("pts.csv"), l = scratch("labels.txt");
  save_points(pc, p.string());
  save_labels(pc.labels, l.string());
  PointCloud back = load_points(p.string());
  CHECK(back.coords == pc.coords);
  CHECK(load_labels(l.string()) == pc.labels);

  write(p, "1,2\n3,4\n5\n");
  try {
    load_points(p.string());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("LFR fixture") {
  const std::string dir = NPRC_FIXTURE_DIR "/lfr_n1000_mu0.1";
  LabeledGraph lg = load_lfr(dir + "/network.dat", dir + "/community.dat");
  CHECK(lg.graph.num_vertices() == 1000);
  CHECK(lg.labels.size() == 1000);
  for (const auto& e : lg.graph.edges()) CHECK(e.w == 1.0);

  auto net = scratch("net.dat"), com = scratch("com.dat");
  write(net, "1 2\n2 1\n2 3\n3 1\n");
  write(com, "1 1\n2 1\n3 2\n");
  LabeledGraph small = load_lfr(net.string(), com.string());
  CHECK(small.graph.num_vertices() == 3);
  CHECK(small.graph.num_edges() == 3);
  CHECK(small.labels == std::vector<Label>{1, 1, 2});
}
