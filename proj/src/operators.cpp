#include "nprclust/operators.hpp"

#include <Eigen/SVD>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

namespace nprc {

namespace {

void check_size(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want)
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": expected length " + std::to_string(want) +
                    ", got " + std::to_string(got));
}

}  // namespace

Vector apply_B(const Graph& g, const Vector& x) {
  check_size(x.size(), g.num_vertices(), "apply_B");
  const auto& edges = g.edges();
  Vector z(static_cast<Eigen::Index>(edges.size()));
  for (std::size_t k = 0; k < edges.size(); ++k) z[k] = x[edges[k].v] - x[edges[k].u];
  return z;
}

Vector apply_Bt(const Graph& g, const Vector& z) {
  check_size(z.size(), static_cast<Eigen::Index>(g.num_edges()), "apply_Bt");
  const auto& edges = g.edges();
  Vector y = Vector::Zero(g.num_vertices());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    y[edges[k].v] += z[k];
    y[edges[k].u] -= z[k];
  }
  return y;
}

Vector apply_B(const Graph& g, const Vector& x, const std::vector<std::int8_t>& signs) {
  check_size(static_cast<Eigen::Index>(signs.size()), static_cast<Eigen::Index>(g.num_edges()),
             "incidence signs");
  Vector z = apply_B(g, x);
  for (std::size_t k = 0; k < signs.size(); ++k) z[k] *= signs[k];
  return z;
}

Vector apply_Bt(const Graph& g, const Vector& z, const std::vector<std::int8_t>& signs) {
  check_size(static_cast<Eigen::Index>(signs.size()), static_cast<Eigen::Index>(g.num_edges()),
             "incidence signs");
  Vector s = z;
  for (std::size_t k = 0; k < signs.size(); ++k) s[k] *= signs[k];
  return apply_Bt(g, s);
}

Vector apply_L(const Graph& g, const Vector& x) {
  check_size(x.size(), g.num_vertices(), "apply_L");
  Vector y = g.degrees().cwiseProduct(x);
  for (const auto& e : g.edges()) {
    y[e.u] -= e.w * x[e.v];
    y[e.v] -= e.w * x[e.u];
  }
  return y;
}

// ---------------------------------------------------------------------------

struct LaplacianSolver::Impl {
  Eigen::Index n = 0;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
};

LaplacianSolver::LaplacianSolver(const Graph& g) : impl_(std::make_unique<Impl>()) {
  const Eigen::Index n = g.num_vertices();
  impl_->n = n;
  // Unweighted Laplacian with vertex 0 deleted; indices shift down by one.
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n + 2 * g.num_edges());
  for (Vertex v = 1; v < n; ++v)
    trip.emplace_back(v - 1, v - 1, static_cast<double>(g.neighbors(v).size()));
  for (const auto& e : g.edges()) {
    if (e.u == 0) continue;
    trip.emplace_back(e.u - 1, e.v - 1, -1.0);
    trip.emplace_back(e.v - 1, e.u - 1, -1.0);
  }
  SparseMatrix lg(n - 1, n - 1);
  lg.setFromTriplets(trip.begin(), trip.end());
  impl_->ldlt.compute(lg);
  if (impl_->ldlt.info() != Eigen::Success)
    throw Error(ErrorCode::SolverFailure, "grounded Laplacian factorization failed");
}

LaplacianSolver::~LaplacianSolver() = default;
LaplacianSolver::LaplacianSolver(LaplacianSolver&&) noexcept = default;
LaplacianSolver& LaplacianSolver::operator=(LaplacianSolver&&) noexcept = default;

Vector LaplacianSolver::solve(const Vector& rhs) const {
  const auto n = impl_->n;
  check_size(rhs.size(), n, "Laplacian solve");
  Vector y(n);
  y[0] = 0.0;
  y.tail(n - 1) = impl_->ldlt.solve(rhs.tail(n - 1));
  if (impl_->ldlt.info() != Eigen::Success)
    throw Error(ErrorCode::SolverFailure, "grounded Laplacian solve failed");
  y.array() -= y.mean();
  return y;
}

Matrix LaplacianSolver::solve(const Matrix& rhs) const {
  const auto n = impl_->n;
  check_size(rhs.rows(), n, "Laplacian solve");
  Matrix y(n, rhs.cols());
  y.row(0).setZero();
  y.bottomRows(n - 1) = impl_->ldlt.solve(rhs.bottomRows(n - 1));
  if (impl_->ldlt.info() != Eigen::Success)
    throw Error(ErrorCode::SolverFailure, "grounded Laplacian solve failed");
  y.rowwise() -= y.colwise().mean();
  return y;
}

// ---------------------------------------------------------------------------

Operators::Operators(const Graph& g, double beta) : g_(&g), beta_(beta), solver_(g) {
  if (!(beta > 0.0 && beta < 1.0))
    throw Error(ErrorCode::InvalidArgument, "beta must lie in (0,1)");
}

Vector Operators::pinv_B(const Vector& w) const { return solver_.solve(Bt(w)); }

Vector Operators::T(const Vector& x) const {
  const auto& g = *g_;
  check_size(x.size(), g.num_vertices(), "apply_T");
  Vector y(x.size());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    auto nbrs = g.neighbors(v);
    auto ws = g.neighbor_weights(v);
    double acc = 0.0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) acc += ws[i] * x[nbrs[i]];
    const double d = g.degree(v);
    y[v] = (beta_ * d + 1.0) * x[v] - acc / d;
  }
  return y;
}

SparseMatrix Operators::T_matrix() const {
  const auto& g = *g_;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(g.num_vertices() + 2 * g.num_edges());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const double d = g.degree(v);
    trip.emplace_back(v, v, beta_ * d + 1.0);
    auto nbrs = g.neighbors(v);
    auto ws = g.neighbor_weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) trip.emplace_back(v, nbrs[i], -ws[i] / d);
  }
  SparseMatrix t(g.num_vertices(), g.num_vertices());
  t.setFromTriplets(trip.begin(), trip.end());
  return t;
}

Vector Operators::min_norm_solve(const Vector& rhs) const {
  const auto n = g_->num_vertices();
  check_size(rhs.size(), n, "min_norm_solve");
  // Lagrange conditions for min ||T u - rhs|| subject to q^T u = 0:
  //   u = a - mu * b,  a = T^{-1} rhs,  b = (T^T T)^{-1} q,  mu = q^T a / q^T b.
  SparseMatrix t = T_matrix();
  t.makeCompressed();
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(t);
  if (lu.info() != Eigen::Success)
    throw Error(ErrorCode::SolverFailure, "factorization of T failed");
  Vector a = lu.solve(rhs);
  Vector c = lu.transpose().solve(Vector::Ones(n));
  Vector b = lu.solve(c);
  if (lu.info() != Eigen::Success || !a.allFinite() || !b.allFinite())
    throw Error(ErrorCode::SolverFailure, "solve with T failed");
  return a - (a.sum() / b.sum()) * b;
}

Vector min_norm_p2_init(const Operators& ops, const Vector& teleport) {
  return ops.min_norm_solve(ops.beta() * teleport);
}

// ---------------------------------------------------------------------------

Matrix dense_incidence(const Graph& g) {
  Matrix b = Matrix::Zero(static_cast<Eigen::Index>(g.num_edges()), g.num_vertices());
  for (std::size_t k = 0; k < g.num_edges(); ++k) {
    b(k, g.edges()[k].u) = -1.0;
    b(k, g.edges()[k].v) = 1.0;
  }
  return b;
}

Matrix dense_laplacian(const Graph& g) {
  Matrix l = Matrix::Zero(g.num_vertices(), g.num_vertices());
  for (const auto& e : g.edges()) {
    l(e.u, e.v) -= e.w;
    l(e.v, e.u) -= e.w;
  }
  l.diagonal() = g.degrees();
  return l;
}

Matrix dense_T(const Graph& g, double beta) {
  Matrix t = dense_laplacian(g);
  t.array().colwise() /= g.degrees().array();
  t.diagonal().array() += beta * g.degrees().array();
  return t;
}

Matrix dense_pinv(const Matrix& a, double rel_tol) {
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cut = s.size() ? rel_tol * s[0] : 0.0;
  Vector inv = Vector::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > cut) inv[i] = 1.0 / s[i];
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::Index numerical_rank(const Matrix& a, double rel_tol) {
  Eigen::BDCSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

}  // namespace nprc
