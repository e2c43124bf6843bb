#pragma once

#include <vector>

#include "nprclust/appr.hpp"
#include "nprclust/npr.hpp"
#include "nprclust/sweep.hpp"

namespace nprc {

/// Continuation over the p schedule followed by a sweep of every solution.
struct NprClusterResult {
  Vertex pinned = 0;
  std::vector<NprSolution> solutions;
  std::vector<SweepProfile> profiles;
  BestCluster best;
};

NprClusterResult cluster_npr(const Graph& g, const NprConfig& cfg);

struct ApprClusterResult {
  ApprResult push;
  SweepProfile profile;
  BestCluster best;  ///< p is left at 0
};

/// Push, normalize by degree, sweep.
ApprClusterResult cluster_appr(const Graph& g, const ApprConfig& cfg);

}  // namespace nprc
