#include <random>

#include "doctest.h"
#include "nprclust/operators.hpp"
#include "oracles.hpp"

using namespace nprc;

namespace {
Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x[i++] = a;
  return x;
}
}  // namespace

TEST_CASE("incidence action and its adjoint") {
  Graph edge = Graph::build({{0, 1, 1}});
  CHECK(apply_B(edge, vec({0, 1}))[0] == 1.0);
  Vector bt = apply_Bt(edge, vec({1}));
  CHECK(bt[0] == -1.0);
  CHECK(bt[1] == 1.0);

  Graph path = Graph::build({{0, 1, 1}, {1, 2, 1}});
  Vector z = apply_B(path, vec({0, 2, 5}));
  CHECK(z[0] == 2.0);
  CHECK(z[1] == 3.0);
  CHECK(apply_B(path, vec({4, 4, 4})).isZero(0.0));
  Vector ones_t = apply_Bt(path, vec({1, 1}));
  CHECK(ones_t[0] == -1.0);
  CHECK(ones_t[1] == 0.0);
  CHECK(ones_t[2] == 1.0);

  Graph tri = Graph::build({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  Vector x = vec({0.3, -1.2, 2.0});
  Eigen::MatrixXd l = oracle::incidence(tri).transpose() * oracle::incidence(tri);
  CHECK((apply_Bt(tri, apply_B(tri, x)) - l * x).norm() < 1e-14);
}

TEST_CASE("adjoint identity <Bx, z> = <x, B^T z> on random graphs") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    Graph g = oracle::random_graph(rng, 2, 25);
    Vector x = Vector::Random(g.num_vertices());
    Vector z = Vector::Random(static_cast<Eigen::Index>(g.num_edges()));
    CHECK(apply_B(g, x).dot(z) == doctest::Approx(x.dot(apply_Bt(g, z))).epsilon(1e-12));
  }
}

TEST_CASE("pseudoinverse of B") {
  Graph edge = Graph::build({{0, 1, 1}});
  Operators ops(edge, 0.1);
  Vector y = ops.pinv_B(vec({1}));
  CHECK(y[0] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(y[1] == doctest::Approx(0.5).epsilon(1e-14));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    Graph g = oracle::random_graph(rng, 3, 30);
    Operators o(g, 0.01);
    Vector x = Vector::Random(g.num_vertices());
    Vector centred = x.array() - x.mean();
    CHECK((o.pinv_B(o.B(x)) - centred).lpNorm<Eigen::Infinity>() < 1e-10);
    Vector w = Vector::Random(static_cast<Eigen::Index>(g.num_edges()));
    Vector expected = oracle::pinv(oracle::incidence(g)) * w;
    CHECK((o.pinv_B(w) - expected).lpNorm<Eigen::Infinity>() < 1e-10);
  }

  // The cycle vector of a triangle is orthogonal to range(B).
  Graph tri = Graph::build({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  Vector cyc = vec({1, -1, 1});  // edges sorted as (0,1), (0,2), (1,2)
  CHECK(apply_Bt(tri, cyc).isZero(1e-15));
  CHECK(Operators(tri, 0.1).pinv_B(cyc).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("T action") {
  Graph tri = Graph::build({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  Operators ops(tri, 0.5);
  Vector t = ops.T(vec({1, 0, 0}));
  CHECK(t[0] == doctest::Approx(2.0));
  CHECK(t[1] == doctest::Approx(-0.5));
  CHECK(t[2] == doctest::Approx(-0.5));
  CHECK(ops.T(Vector::Zero(3)).isZero(0.0));

  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    Graph g = oracle::random_graph(rng, 3, 50);
    Operators o(g, 0.01);
    Eigen::MatrixXd tt = oracle::t_matrix(g, 0.01);
    Vector x = Vector::Random(g.num_vertices());
    CHECK((o.T(x) - tt * x).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK((Eigen::MatrixXd(o.T_matrix()) - tt).cwiseAbs().maxCoeff() < 1e-14);
    // T is an M-matrix: T^{-1} r >= 0 for an indicator r.
    Vector r = Vector::Zero(g.num_vertices());
    r[0] = 0.01;
    CHECK(tt.partialPivLu().solve(r).minCoeff() >= 0.0);
  }
}

TEST_CASE("minimum-norm least-squares solve") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 10; ++k) {
    Graph g = oracle::random_graph(rng, 2, 30);
    const double beta = 0.01;
    Operators ops(g, beta);
    const Eigen::Index n = g.num_vertices();
    Vector r = Vector::Zero(n);
    r[0] = 1.0;
    Vector u = min_norm_p2_init(ops, r);
    CHECK(std::abs(u.sum()) < 1e-10);

    Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n);
    proj.array() -= 1.0 / n;
    Eigen::MatrixXd y = oracle::t_matrix(g, beta) * proj;
    Vector expected = beta * oracle::pinv(y) * r;
    CHECK((u - expected).lpNorm<Eigen::Infinity>() < 1e-8);

    // Local optimality over mean-zero perturbations.
    const double base = (ops.T(u) - beta * r).norm();
    for (int t = 0; t < 20; ++t) {
      Vector d = Vector::Random(n);
      d.array() -= d.mean();
      d *= 1e-3 / d.norm();
      CHECK((ops.T(u + d) - beta * r).norm() >= base - 1e-15);
    }
  }
}

TEST_CASE("dense helpers agree with the oracle") {
  std::mt19937_64 rng(2);
  Graph g = oracle::random_graph(rng, 10, 20);
  CHECK((dense_incidence(g) - oracle::incidence(g)).isZero(0.0));
  CHECK(numerical_rank(dense_incidence(g)) == g.num_vertices() - 1);
  CHECK(numerical_rank(dense_laplacian(g)) == g.num_vertices() - 1);
}
