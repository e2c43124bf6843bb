#include <random>

#include "doctest.h"
#include "nprclust/error.hpp"
#include "nprclust/graph.hpp"
#include "oracles.hpp"

using namespace nprc;

namespace {
ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}
}  // namespace

TEST_CASE("degrees of a triangle and a weighted path") {
  Graph t = Graph::build({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  CHECK(t.num_vertices() == 3);
  CHECK(t.degree(0) == 2.0);
  CHECK(t.degree(1) == 2.0);
  CHECK(t.degree(2) == 2.0);
  CHECK(t.total_volume() == 6.0);

  Graph p = Graph::build({{0, 1, 2}, {1, 2, 3}});
  CHECK(p.degree(0) == 2.0);
  CHECK(p.degree(1) == 5.0);
  CHECK(p.degree(2) == 3.0);
}

TEST_CASE("edges are normalized and sorted") {
  Graph g = Graph::build({{2, 1, 1.5}, {1, 0, 2}});
  REQUIRE(g.num_edges() == 2);
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
  CHECK(g.edges()[1].u == 1);
  CHECK(g.edges()[1].v == 2);
  CHECK(g.edges()[1].w == 1.5);
}

TEST_CASE("graph construction rejects invalid input") {
  CHECK(code_of([] { Graph::build({{0, 1, 1}}, 3); }) == ErrorCode::DisconnectedGraph);
  CHECK(code_of([] { Graph::build({{0, 1, 1}, {2, 3, 1}}); }) == ErrorCode::DisconnectedGraph);
  CHECK(code_of([] { Graph::build({{0, 0, 1}, {0, 1, 1}}); }) == ErrorCode::SelfLoop);
  CHECK(code_of([] { Graph::build({{0, 1, 1}, {1, 0, 2}}); }) == ErrorCode::DuplicateEdge);
  CHECK(code_of([] { Graph::build({{0, 1, 0.0}}); }) == ErrorCode::NonpositiveWeight);
  CHECK(code_of([] { Graph::build({{0, 1, -1.0}}); }) == ErrorCode::NonpositiveWeight);
  CHECK(code_of([] { Graph::build({}); }) == ErrorCode::EmptyInput);
}

TEST_CASE("conductance by hand") {
  Graph c4 = Graph::build({{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}});
  std::vector<Vertex> s01{0, 1};
  CHECK(conductance(c4, VertexSet(c4, s01)) == doctest::Approx(0.5).epsilon(1e-15));

  Graph tri = Graph::build({{0, 1, 1}, {1, 2, 1}, {0, 2, 3}});
  std::vector<Vertex> s1{1};
  CHECK(conductance(tri, VertexSet(tri, s1)) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(code_of([&] { conductance(c4, VertexSet(c4)); }) == ErrorCode::EmptyOrFullSet);
  std::vector<Vertex> all{0, 1, 2, 3};
  CHECK(code_of([&] { conductance(c4, VertexSet(c4, all)); }) == ErrorCode::EmptyOrFullSet);
}

TEST_CASE("conductance is positive for every proper subset") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    Graph g = oracle::random_graph(rng, 3, 10);
    std::vector<char> in(g.num_vertices());
    for (std::uint64_t mask = 1; mask + 1 < (1ull << g.num_vertices()); ++mask) {
      std::vector<Vertex> members;
      for (Vertex v = 0; v < g.num_vertices(); ++v) {
        in[v] = (mask >> v) & 1;
        if (in[v]) members.push_back(v);
      }
      const double phi = conductance(g, VertexSet(g, members));
      CHECK(phi > 0.0);
      CHECK(phi == doctest::Approx(oracle::conductance(g, in)).epsilon(1e-12));
    }
  }
}

TEST_CASE("shortest paths and furthest vertex") {
  Graph path = Graph::build({{0, 1, 1}, {1, 2, 1}});
  CHECK(furthest_vertex(path, 0, EdgeLength::Weight) == 2);

  Graph star = Graph::build({{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
  CHECK(furthest_vertex(star, 0) == 1);

  Graph wp = Graph::build({{0, 1, 5}, {1, 2, 1}});
  auto d = shortest_distances(wp, 0, edge_lengths(wp, EdgeLength::Weight));
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 5.0);
  CHECK(d[2] == 6.0);
  CHECK(furthest_vertex(wp, 0, EdgeLength::Weight) == 2);

  // Inverse-weight lengths: 1/5 + 1/1 for v2, 1/5 for v1.
  auto di = shortest_distances(wp, 0, edge_lengths(wp, EdgeLength::InverseWeight));
  CHECK(di[1] == doctest::Approx(0.2));
  CHECK(di[2] == doctest::Approx(1.2));
}

TEST_CASE("connected components of a raw edge list") {
  std::vector<Edge> e{{0, 1, 1}, {2, 3, 1}};
  int count = 0;
  auto comp = connected_components(5, e, &count);
  CHECK(count == 3);
  CHECK(comp[0] == comp[1]);
  CHECK(comp[2] == comp[3]);
  CHECK(comp[0] != comp[2]);
  CHECK(comp[4] != comp[0]);
}
