#include <cmath>
#include <random>

#include "doctest.h"
#include "nprclust/error.hpp"
#include "nprclust/npr.hpp"
#include "oracles.hpp"

using namespace nprc;

namespace {

NprProblem manufactured(const Graph& g, NprConfig cfg, const Vector& y, double p, Vertex pinned) {
  Operators ops(g, cfg.beta);
  const double zeta = cfg.zeta_for(g.num_vertices());
  Vector r = ops.T(f_nonlinear(ops, y, p, zeta)) / cfg.beta;
  return NprProblem(g, std::move(cfg), r, pinned);
}

}  // namespace

TEST_CASE("K diagonal") {
  Vector z(4);
  z << 0.0, 0.5, -2.0, 1e-3;
  CHECK(k_diag(z, 2.0, 1e-11).isApprox(Vector::Ones(4), 0.0));
  const double zeta = 1e-11;
  for (double p : {1.95, 1.6, 1.45, 1.05}) {
    Vector k = k_diag(z, p, zeta);
    CHECK(k[0] == doctest::Approx(std::pow(zeta, (p - 2.0) / 2.0)).epsilon(1e-14));
    CHECK(k.minCoeff() > 0.0);
  }
}

TEST_CASE("nonlinear map f") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    Graph g = oracle::random_graph(rng, 3, 20);
    Operators ops(g, 0.01);
    Vector x = Vector::Random(g.num_vertices());
    Vector centred = x.array() - x.mean();
    CHECK((f_nonlinear(ops, x, 2.0, 1e-11) - centred).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK(f_nonlinear(ops, Vector::Constant(g.num_vertices(), 3.0), 1.6, 1e-11).isZero(1e-15));

    const auto b = oracle::incidence(g);
    const auto bp = oracle::pinv(b);
    for (double p : {1.9, 1.5}) {
      Vector expected = oracle::f_dense(b, bp, x, p, 1e-11);
      CHECK((f_nonlinear(ops, x, p, 1e-11) - expected).lpNorm<Eigen::Infinity>() < 1e-10);
    }
  }
  Graph edge = Graph::build({{0, 1, 1}});
  Operators ops(edge, 0.1);
  Vector x(2);
  x << 0.0, 1.0;
  Vector f = f_nonlinear(ops, x, 1.5, 1e-11);
  const double h = std::pow(1.0 + 1e-11, -0.25);
  CHECK(f[0] == doctest::Approx(-h / 2).epsilon(1e-15));
  CHECK(f[1] == doctest::Approx(h / 2).epsilon(1e-15));
}

TEST_CASE("residual and merit") {
  std::mt19937_64 rng(8);
  Graph g = oracle::random_graph(rng, 10, 20);
  NprConfig cfg;
  cfg.beta = 0.05;
  cfg.seed_vertex = 2;
  NprProblem prob(g, cfg);
  Vector x = Vector::Random(g.num_vertices());
  Vector centred = x.array() - x.mean();
  Vector expected = cfg.beta * prob.teleport() - oracle::t_matrix(g, cfg.beta) * centred;
  CHECK((prob.residual(x, 2.0) - expected).lpNorm<Eigen::Infinity>() < 1e-12);
  for (int t = 0; t < 10; ++t) CHECK(prob.merit(Vector::Random(g.num_vertices()), 1.6) >= 0.0);

  Vector y = Vector::Random(g.num_vertices());
  NprProblem m = manufactured(g, cfg, y, 1.7, 0);
  CHECK(m.residual(y, 1.7).lpNorm<Eigen::Infinity>() < 1e-13);
}

TEST_CASE("Jacobian") {
  std::mt19937_64 rng(12);
  Graph g = oracle::random_graph(rng, 8, 15);
  NprConfig cfg;
  cfg.zeta = 1e-11;
  NprProblem prob(g, cfg);
  const Eigen::Index n = g.num_vertices();
  Vector x = Vector::Random(n);

  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n);
  proj.array() -= 1.0 / n;
  Eigen::MatrixXd j2 = prob.jacobian(x, 2.0);
  CHECK((j2 + oracle::t_matrix(g, cfg.beta) * proj).cwiseAbs().maxCoeff() < 1e-12);

  for (double p : {1.95, 1.6, 1.45}) {
    Eigen::MatrixXd j = prob.jacobian(x, p);
    CHECK((j * Vector::Ones(n)).lpNorm<Eigen::Infinity>() < 1e-10);
    CHECK(oracle::rank(j) == n - 1);
    for (Vertex c = 0; c < n; ++c) {
      ReducedJacobian red = reduce_full_rank(j, c);
      CHECK(red.J.cols() == n - 1);
      CHECK(oracle::rank(red.J) == n - 1);
    }
  }
}

TEST_CASE("reduced index map round trip") {
  Vector full(5);
  full << 1, 2, 3, 4, 5;
  Vector red = strip_pinned(full, 2);
  REQUIRE(red.size() == 4);
  CHECK(red[2] == 4.0);
  Vector back = embed_reduced(red, 2, 1e-12);
  CHECK(back[2] == 1e-12);
  CHECK(back[0] == 1.0);
  CHECK(back[4] == 5.0);
}

TEST_CASE("LM converges to a manufactured root") {
  std::mt19937_64 rng(20);
  Graph g = oracle::random_graph(rng, 20, 20);
  NprConfig cfg;
  cfg.beta = 0.01;
  Vector y = Vector::Random(20);
  y.array() -= y.mean();
  NprProblem prob = manufactured(g, cfg, y, 1.8, 7);
  NprSolution sol = prob.lm_solve(1.8, prob.initial_iterate());
  CHECK(sol.trace.status == LmStatus::Converged);
  CHECK(sol.trace.final_psi() <= 1e-14);
  CHECK(sol.x[7] == cfg.fixed_value);

  double last = sol.trace.initial_psi;
  double lambda_prev = -1.0;
  bool prev_accepted = false;
  for (const auto& it : sol.trace.iterations) {
    if (it.accepted) {
      CHECK(it.psi <= last);
      last = it.psi;
    }
    if (lambda_prev > 0.0) {
      if (prev_accepted)
        CHECK(it.lambda <= lambda_prev);
      else
        CHECK(it.lambda > lambda_prev);
    }
    lambda_prev = it.lambda;
    prev_accepted = it.accepted;
  }
}

TEST_CASE("p = 2 agrees with the linear solve") {
  Graph path = Graph::build({{0, 1, 1}, {1, 2, 2}, {2, 3, 1}, {3, 4, 1.5}});
  NprConfig cfg;
  cfg.beta = 0.1;
  NprProblem prob(path, cfg);
  NprSolution sol = prob.lm_solve(2.0, Vector::Zero(5));
  // Mean-zero least-squares solution of T (I - Q/n) u = beta r.
  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(5, 5);
  proj.array() -= 0.2;
  Vector u = oracle::pinv(oracle::t_matrix(path, 0.1) * proj) * (0.1 * prob.teleport());
  Vector centred = sol.x.array() - sol.x.mean();
  CHECK((centred - u).lpNorm<Eigen::Infinity>() < 1e-6);
}

TEST_CASE("continuation") {
  std::mt19937_64 rng(30);
  Graph g = oracle::random_graph(rng, 15, 15);
  NprConfig cfg;
  cfg.p_schedule = {1.95};
  NprProblem prob(g, cfg);
  auto sols = continuation(prob);
  REQUIRE(sols.size() == 1);
  NprSolution direct = prob.lm_solve(1.95, prob.initial_iterate());
  CHECK((sols[0].x - direct.x).lpNorm<Eigen::Infinity>() == 0.0);

  cfg.p_schedule = {1.95, 1.6};
  auto two = continuation(g, cfg);
  REQUIRE(two.size() == 2);
  CHECK(two[1].p == 1.6);
}

TEST_CASE("configuration validation") {
  Graph g = Graph::build({{0, 1, 1}, {1, 2, 1}});
  auto code = [&](NprConfig c) {
    try {
      c.validate(g.num_vertices());
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::SolverFailure;
  };
  NprConfig c;
  c.beta = 0.0;
  CHECK(code(c) == ErrorCode::InvalidArgument);
  c = {};
  c.p_schedule = {1.6, 1.9};
  CHECK(code(c) == ErrorCode::InvalidArgument);
  c = {};
  c.p_schedule = {2.5};
  CHECK(code(c) == ErrorCode::InvalidArgument);
  c = {};
  c.seed_vertex = 3;
  CHECK(code(c) == ErrorCode::InvalidArgument);
  CHECK(default_zeta(100) == 1e-11);
  CHECK(default_zeta(10000) == 1e-6);
}

TEST_CASE("linear PageRank regime") {
  std::mt19937_64 rng(40);
  for (int t = 0; t < 10; ++t) {
    Graph g = oracle::random_graph(rng, 5, 30, 1.0, 3.0);
    Vector x = solve_linear_pagerank(g, 0.01, 0);
    Eigen::Index arg = 0;
    x.maxCoeff(&arg);
    CHECK(x.minCoeff() >= 0.0);
    CHECK(arg == 0);
    CHECK(x[0] < 1.0 / g.degree(0));
  }
}
