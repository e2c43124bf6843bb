#include "nprclust/pipeline.hpp"

#include <algorithm>

namespace nprc {

NprClusterResult cluster_npr(const Graph& g, const NprConfig& cfg) {
  NprProblem problem(g, cfg);
  NprClusterResult out;
  out.pinned = problem.pinned_vertex();
  out.solutions = continuation(problem);
  std::vector<double> ps;
  for (const auto& s : out.solutions) {
    out.profiles.push_back(sweep_cut(g, s.x));
    ps.push_back(s.p);
  }
  out.best = best_cluster(out.profiles, ps);
  return out;
}

ApprClusterResult cluster_appr(const Graph& g, const ApprConfig& cfg) {
  ApprClusterResult out;
  out.push = appr_push(g, cfg);
  out.profile = sweep_cut(g, out.push.degree_normalized(g));
  out.best.phi = out.profile.best_phi;
  out.best.members = out.profile.best_members();
  std::sort(out.best.members.begin(), out.best.members.end());
  return out;
}

}  // namespace nprc
