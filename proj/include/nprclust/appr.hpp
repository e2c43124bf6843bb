#pragma once

#include "nprclust/graph.hpp"
#include "nprclust/operators.hpp"

namespace nprc {

/// Approximate personalized PageRank by residual push.
struct ApprConfig {
  /// Probability of following an edge; 1 - alpha is the teleport probability.
  double alpha = 0.85;
  /// Push threshold per unit degree; 0 selects 1e-6 / n.
  double epsilon = 0.0;
  Vertex seed_vertex = 0;

  void validate(Vertex n) const;
  double epsilon_for(Vertex n) const { return epsilon > 0.0 ? epsilon : 1e-6 / n; }
};

struct ApprResult {
  Vector approx;    ///< PageRank mass estimate, nonnegative
  Vector residual;  ///< unpushed mass; residual(v) < epsilon d(v) everywhere
  std::size_t pushes = 0;

  /// approx(v) / d(v), the vector that gets swept.
  Vector degree_normalized(const Graph& g) const;
};

/// Push until every residual is below epsilon * d(v). The exact vector
/// (1 - alpha) (I - alpha A D^{-1})^{-1} e_s satisfies
/// 0 <= exact - approx <= epsilon * d entrywise on termination.
ApprResult appr_push(const Graph& g, const ApprConfig& cfg);

}  // namespace nprc
