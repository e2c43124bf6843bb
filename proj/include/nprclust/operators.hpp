#pragma once

#include <memory>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "nprclust/graph.hpp"

namespace nprc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

// Incidence operator B (m x n). Row k belongs to edge k = (u, v), u < v, with
// -1 at the origin u and +1 at the terminus v. The sign pattern can be
// flipped per row to check orientation independence; flipped rows use
// origin v and terminus u.

/// z_e = x(terminus) - x(origin).
Vector apply_B(const Graph& g, const Vector& x);
/// Adjoint of apply_B.
Vector apply_Bt(const Graph& g, const Vector& z);

Vector apply_B(const Graph& g, const Vector& x, const std::vector<std::int8_t>& signs);
Vector apply_Bt(const Graph& g, const Vector& z, const std::vector<std::int8_t>& signs);

/// Weighted Laplacian action (D - A) x.
Vector apply_L(const Graph& g, const Vector& x);

/**
   Factorization of the unweighted Laplacian B^T B grounded at vertex 0.

   `solve` returns the mean-zero solution of B^T B y = rhs. The right-hand
   side must be orthogonal to the all-ones vector for the system to be
   consistent; the grounding then drops nothing, and re-centering removes the
   dependence on which vertex was grounded.
 */
class LaplacianSolver {
 public:
  explicit LaplacianSolver(const Graph& g);
  ~LaplacianSolver();
  LaplacianSolver(LaplacianSolver&&) noexcept;
  LaplacianSolver& operator=(LaplacianSolver&&) noexcept;

  Vector solve(const Vector& rhs) const;
  /// Column-wise solve; every column must sum to zero.
  Matrix solve(const Matrix& rhs) const;

  Vertex grounded_vertex() const noexcept { return 0; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Graph-bound operator bundle: B, B^T, B^+, T = beta D + D^{-1} L.
class Operators {
 public:
  Operators(const Graph& g, double beta);

  const Graph& graph() const noexcept { return *g_; }
  double beta() const noexcept { return beta_; }
  const LaplacianSolver& laplacian_solver() const noexcept { return solver_; }

  Vector B(const Vector& x) const { return apply_B(*g_, x); }
  Vector Bt(const Vector& z) const { return apply_Bt(*g_, z); }

  /// Moore-Penrose pseudoinverse of B applied to an edge vector: the
  /// mean-zero solution of B^T B y = B^T w.
  Vector pinv_B(const Vector& w) const;

  /// (beta d(v) + 1) x(v) - (1/d(v)) sum_u w(u,v) x(u), matrix-free.
  Vector T(const Vector& x) const;
  /// T as a sparse matrix (rows scaled by 1/d on the Laplacian part).
  SparseMatrix T_matrix() const;

  /// argmin over u orthogonal to the ones vector of ||T u - rhs||_2, i.e.
  /// the minimum-norm least-squares solution of T (I - Q/n) u = rhs.
  Vector min_norm_solve(const Vector& rhs) const;

 private:
  const Graph* g_;
  double beta_;
  LaplacianSolver solver_;
};

/// Minimum-norm p = 2 start: beta * (T B^+ B)^+ r.
Vector min_norm_p2_init(const Operators& ops, const Vector& teleport);

// Dense assemblies, for validation and small-graph oracles.
Matrix dense_incidence(const Graph& g);
Matrix dense_laplacian(const Graph& g);
Matrix dense_T(const Graph& g, double beta);
/// SVD-based pseudoinverse; singular values below tol * sigma_max are dropped.
Matrix dense_pinv(const Matrix& a, double rel_tol = 1e-12);
/// Numerical rank from singular values with the same relative cutoff.
Eigen::Index numerical_rank(const Matrix& a, double rel_tol = 1e-10);

}  // namespace nprc
