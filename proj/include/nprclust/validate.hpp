#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nprclust/npr.hpp"

namespace nprc {

struct ValidateOptions {
  double beta = 0.01;
  double zeta = 1e-11;
  Vertex seed_vertex = 0;
  std::vector<double> p_values{1.95, 1.6, 1.45};
  std::uint64_t rng_seed = 1;
  /// Dense checks (pseudoinverse identities, ranks, Jacobian) are skipped
  /// above this vertex count.
  Vertex dense_limit = 400;
  double fd_step = 1e-6;
};

struct ValidationCheck {
  std::string name;
  double value = 0.0;      ///< measured error, or the rank for rank checks
  double tolerance = 0.0;
  bool passed = false;
  bool skipped = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_passed() const;
};

/// Invariant suite on one graph: pseudoinverse identities, projector and
/// rank facts, diagonal dominance of T, linear-regime bounds, K positivity,
/// Jacobian against central differences, kernel of J, and orientation
/// independence of f, g and J.
ValidationReport validate_graph(const Graph& g, const ValidateOptions& opts = {});

// Pieces of the suite, exposed for reuse.

/// B^+ assembled densely from the Laplacian solver (n x m).
Matrix dense_pinv_B(const Operators& ops);

/// Largest residual of the four Penrose equations for (B, B^+).
double penrose_error(const Matrix& b, const Matrix& b_pinv);

/// max |J_ij - Jfd_ij| / max |Jfd_ij| with central differences of the
/// residual.
double jacobian_fd_error(const NprProblem& problem, const Vector& x, double p, double h);

/// Residual by central differences, column by column (n x n).
Matrix finite_difference_jacobian(const NprProblem& problem, const Vector& x, double p, double h);

/// Jacobian assembled with the incidence rows multiplied by `signs`.
Matrix signed_jacobian(const NprProblem& problem, const Vector& x, double p,
                       const std::vector<std::int8_t>& signs);

}  // namespace nprc
