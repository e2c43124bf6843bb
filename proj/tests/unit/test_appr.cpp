#include <random>

#include "doctest.h"
#include "nprclust/appr.hpp"
#include "nprclust/error.hpp"
#include "oracles.hpp"

using namespace nprc;

TEST_CASE("large epsilon never pushes") {
  Graph g = Graph::build({{0, 1, 1}, {1, 2, 1}});
  ApprConfig cfg;
  cfg.epsilon = 5.0;
  cfg.seed_vertex = 1;
  ApprResult res = appr_push(g, cfg);
  CHECK(res.pushes == 0);
  CHECK(res.approx.isZero(0.0));
  CHECK(res.residual[1] == 1.0);
}

TEST_CASE("two-vertex closed form") {
  Graph g = Graph::build({{0, 1, 1}});
  ApprConfig cfg;
  cfg.alpha = 0.5;
  cfg.epsilon = 1e-8;
  ApprResult res = appr_push(g, cfg);
  // (1 - a) (I - a A D^{-1})^{-1} e_0 with A D^{-1} = [[0,1],[1,0]]:
  // (1 - a) / (1 - a^2) * (1, a) = (2/3, 1/3).
  Vector exact(2);
  exact << 2.0 / 3.0, 1.0 / 3.0;
  for (Vertex v = 0; v < 2; ++v) {
    CHECK(exact[v] - res.approx[v] >= -1e-15);
    CHECK(exact[v] - res.approx[v] <= cfg.epsilon * g.degree(v));
  }
}

TEST_CASE("termination bound against the dense solution") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    Graph g = oracle::random_graph(rng, 5, 60);
    ApprConfig cfg;
    cfg.epsilon = 1e-5;
    cfg.seed_vertex = static_cast<Vertex>(rng() % g.num_vertices());
    ApprResult res = appr_push(g, cfg);
    Vector exact = oracle::dense_ppr(g, cfg.alpha, cfg.seed_vertex);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      CHECK(res.residual[v] < cfg.epsilon * g.degree(v));
      CHECK(res.approx[v] >= 0.0);
      CHECK(exact[v] - res.approx[v] >= -1e-12);
      CHECK(exact[v] - res.approx[v] <= cfg.epsilon * g.degree(v) + 1e-12);
    }
    Vector dn = res.degree_normalized(g);
    CHECK(dn[cfg.seed_vertex] == doctest::Approx(res.approx[cfg.seed_vertex] / g.degree(cfg.seed_vertex)));
  }
}

TEST_CASE("invalid APPR configuration") {
  Graph g = Graph::build({{0, 1, 1}});
  ApprConfig cfg;
  cfg.alpha = 1.0;
  CHECK_THROWS_AS(appr_push(g, cfg), Error);
  cfg.alpha = 0.85;
  cfg.seed_vertex = 2;
  CHECK_THROWS_AS(appr_push(g, cfg), Error);
}
