#include "nprclust/sweep.hpp"

#include <algorithm>
#include <numeric>

namespace nprc {

SweepProfile sweep_cut(const Graph& g, const Vector& x) {
  const Vertex n = g.num_vertices();
  if (x.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "sweep vector must have one entry per vertex");

  SweepProfile prof;
  prof.ordering.resize(n);
  std::iota(prof.ordering.begin(), prof.ordering.end(), 0);
  std::sort(prof.ordering.begin(), prof.ordering.end(), [&](Vertex a, Vertex b) {
    return x[a] != x[b] ? x[a] > x[b] : a < b;
  });

  std::vector<std::uint8_t> in(n, 0);
  const double total = g.total_volume();
  double vol = 0.0;
  double cut = 0.0;
  prof.phi.resize(n - 1);
  for (Vertex j = 0; j + 1 < n; ++j) {
    const Vertex v = prof.ordering[j];
    // Edges to the prefix leave the boundary, the others join it.
    auto nbrs = g.neighbors(v);
    auto ws = g.neighbor_weights(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) cut += in[nbrs[i]] ? -ws[i] : ws[i];
    in[v] = 1;
    vol += g.degree(v);
    prof.phi[j] = cut / std::min(vol, total - vol);
  }
  auto best = std::min_element(prof.phi.begin(), prof.phi.end());
  prof.best_j = static_cast<std::size_t>(best - prof.phi.begin()) + 1;
  prof.best_phi = *best;
  return prof;
}

BestCluster best_cluster(const std::vector<SweepProfile>& profiles,
                         const std::vector<double>& p_values) {
  if (profiles.empty()) throw Error(ErrorCode::EmptyInput, "no sweep profiles to choose from");
  if (p_values.size() != profiles.size())
    throw Error(ErrorCode::DimensionMismatch, "one p value per profile expected");
  std::size_t best = 0;
  for (std::size_t i = 1; i < profiles.size(); ++i)
    if (profiles[i].best_phi < profiles[best].best_phi) best = i;
  BestCluster out;
  out.profile_index = best;
  out.p = p_values[best];
  out.phi = profiles[best].best_phi;
  out.members = profiles[best].best_members();
  std::sort(out.members.begin(), out.members.end());
  return out;
}

}  // namespace nprc
