#pragma once

#include <vector>

#include "nprclust/graph.hpp"
#include "nprclust/operators.hpp"

namespace nprc {

/// Conductance of every prefix of the vertices ordered by decreasing value.
struct SweepProfile {
  std::vector<Vertex> ordering;  ///< x(ordering[i]) >= x(ordering[i+1]); ties by id
  std::vector<double> phi;       ///< phi[j-1] = conductance of the first j vertices, j = 1..n-1
  std::size_t best_j = 0;        ///< prefix length with the smallest phi (first on ties)
  double best_phi = 0.0;

  std::vector<Vertex> best_members() const {
    return {ordering.begin(), ordering.begin() + static_cast<std::ptrdiff_t>(best_j)};
  }
};

/// Incremental sweep, O(m + n log n).
SweepProfile sweep_cut(const Graph& g, const Vector& x);

struct BestCluster {
  std::size_t profile_index = 0;
  double p = 0.0;
  double phi = 0.0;
  std::vector<Vertex> members;
};

/// Global minimum conductance over per-p profiles; ties go to the earlier
/// entry (the larger p in a decreasing schedule). Throws EmptyInput.
BestCluster best_cluster(const std::vector<SweepProfile>& profiles,
                         const std::vector<double>& p_values);

}  // namespace nprc
