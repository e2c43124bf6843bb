#pragma once

#include <string>
#include <vector>

#include "nprclust/graph.hpp"
#include "nprclust/operators.hpp"

namespace nprc {

/// Solver settings for the nonlinear modified PageRank problem.
struct NprConfig {
  double beta = 0.01;
  /// Smoothing inside the Hadamard power; 0 selects default_zeta(n).
  double zeta = 0.0;
  std::vector<double> p_schedule{1.95, 1.9, 1.8, 1.7, 1.6, 1.5, 1.45};
  Vertex seed_vertex = 0;
  /// Value held at the vertex furthest from the seed.
  double fixed_value = 1e-12;
  double grad_tol = 1e-7;
  double step_tol = 1e-7;
  int max_iters = 500;
  double lambda0_factor = 1e-3;
  EdgeLength pin_length = EdgeLength::InverseWeight;
  /// Largest vertex count for which the dense Jacobian path is allowed.
  Vertex dense_limit = 2000;

  /// Throws InvalidArgument when a field is out of range for a graph with n
  /// vertices.
  void validate(Vertex n) const;
  double zeta_for(Vertex n) const;
};

/// 1e-6 for graphs with at least 10^4 vertices, 1e-11 otherwise.
double default_zeta(Vertex n);

enum class LmStatus { Converged, IterationCap, StallFailure };
enum class LmStop { GradientTolerance, StepTolerance, IterationCap, Stall };

const char* to_string(LmStatus s);
const char* to_string(LmStop s);

struct LmIteration {
  int iter = 0;
  double psi = 0.0;        ///< merit at the current iterate after this trial
  double grad_norm = 0.0;  ///< max-norm of the reduced gradient at the current iterate
  double lambda = 0.0;     ///< damping used for this trial
  double rho = 0.0;        ///< ared / pred of this trial
  bool accepted = false;
};

struct LmTrace {
  double initial_psi = 0.0;
  double initial_grad_norm = 0.0;
  std::vector<LmIteration> iterations;
  LmStatus status = LmStatus::IterationCap;
  LmStop stop = LmStop::IterationCap;

  int accepted_steps() const;
  double final_psi() const;
  double final_grad_norm() const;
};

struct NprSolution {
  Vector x;  ///< full length n, pinned entry included
  double p = 2.0;
  LmTrace trace;
};

// -- building blocks --------------------------------------------------------

/// Diagonal of K: (z^2 + zeta)^((p-2)/2) + (p-2) z^2 (z^2 + zeta)^((p-4)/2).
Vector k_diag(const Vector& z, double p, double zeta);

/// The edge vector inside the pseudoinverse: (z^2 + zeta)^((p-2)/2) * z.
Vector hadamard_flux(const Vector& z, double p, double zeta);

/// f(x) = B^+ (((Bx)^2 + zeta)^((p-2)/2) * Bx).
Vector f_nonlinear(const Operators& ops, const Vector& x, double p, double zeta);
/// Same with the incidence rows multiplied by `signs` (+1/-1 per edge).
Vector f_nonlinear(const Operators& ops, const Vector& x, double p, double zeta,
                   const std::vector<std::int8_t>& signs);

/// Dense B^T K B for the given K diagonal.
Matrix dense_reweighted_laplacian(const Graph& g, const Vector& k);

struct ReducedJacobian {
  Matrix J;                     ///< n x (n-1)
  std::vector<Vertex> columns;  ///< reduced column index -> vertex id
  Vertex pinned = 0;
};

/// Drops the pinned column from J.
ReducedJacobian reduce_full_rank(const Matrix& J, Vertex pinned);

/// Inverse of the reduction: re-inserts `fixed_value` at `pinned`.
Vector embed_reduced(const Vector& reduced, Vertex pinned, double fixed_value);
Vector strip_pinned(const Vector& full, Vertex pinned);

/**
   The residual system g(x) = beta r - T f(x) on one graph, with the vertex
   whose Jacobian column is dropped chosen up front.

   The residual depends on x only through Bx, so shifting x by a constant
   leaves it unchanged; the pinned entry is that gauge.
 */
class NprProblem {
 public:
  /// Teleport vector = indicator of cfg.seed_vertex; the pinned vertex is
  /// the furthest vertex from the seed.
  NprProblem(const Graph& g, NprConfig cfg);
  /// Explicit teleport vector and pinned vertex (manufactured problems).
  NprProblem(const Graph& g, NprConfig cfg, Vector teleport, Vertex pinned);

  const Graph& graph() const noexcept { return *g_; }
  const NprConfig& config() const noexcept { return cfg_; }
  const Operators& ops() const noexcept { return ops_; }
  const Vector& teleport() const noexcept { return r_; }
  Vertex pinned_vertex() const noexcept { return pinned_; }
  double zeta() const noexcept { return zeta_; }

  Vector f(const Vector& x, double p) const;
  Vector residual(const Vector& x, double p) const;
  double merit(const Vector& x, double p) const;
  /// J = -T B^+ K B assembled densely; throws SizeExceeded above the limit.
  Matrix jacobian(const Vector& x, double p) const;

  /// Minimum-norm p = 2 solution shifted so the pinned entry equals
  /// fixed_value.
  Vector initial_iterate() const;

  /// Levenberg-Marquardt on the reduced unknowns. x0 must have length n; its
  /// pinned entry is overwritten with fixed_value.
  NprSolution lm_solve(double p, Vector x0) const;

 private:
  const Graph* g_;
  NprConfig cfg_;
  Operators ops_;
  Vector r_;
  Vertex pinned_;
  double zeta_;
};

/// Runs the p schedule in order, warm-starting each solve from the previous
/// solution and the first from the minimum-norm p = 2 solution.
std::vector<NprSolution> continuation(const NprProblem& problem);
std::vector<NprSolution> continuation(const Graph& g, const NprConfig& cfg);

/// Sparse LU solve of T x = beta r, the linear modified PageRank system.
Vector solve_linear_pagerank(const Graph& g, double beta, Vertex seed);

}  // namespace nprc
