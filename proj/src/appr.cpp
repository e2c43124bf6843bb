#include "nprclust/appr.hpp"

#include <cmath>
#include <deque>

namespace nprc {

void ApprConfig::validate(Vertex n) const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0,1)");
  if (epsilon < 0.0 || !std::isfinite(epsilon))
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive (or 0 for the default)");
  if (seed_vertex < 0 || seed_vertex >= n)
    throw Error(ErrorCode::InvalidArgument, "seed vertex out of range");
}

Vector ApprResult::degree_normalized(const Graph& g) const {
  return approx.cwiseQuotient(g.degrees());
}

ApprResult appr_push(const Graph& g, const ApprConfig& cfg) {
  const Vertex n = g.num_vertices();
  cfg.validate(n);
  const double eps = cfg.epsilon_for(n);

  ApprResult res;
  res.approx = Vector::Zero(n);
  res.residual = Vector::Zero(n);
  res.residual[cfg.seed_vertex] = 1.0;

  std::vector<std::uint8_t> queued(n, 0);
  std::deque<Vertex> queue;
  auto over = [&](Vertex v) { return res.residual[v] >= eps * g.degree(v); };
  if (over(cfg.seed_vertex)) {
    queue.push_back(cfg.seed_vertex);
    queued[cfg.seed_vertex] = 1;
  }

  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    queued[u] = 0;
    const double ru = res.residual[u];
    res.approx[u] += (1.0 - cfg.alpha) * ru;
    res.residual[u] = 0.0;
    ++res.pushes;
    const double share = cfg.alpha * ru / g.degree(u);
    auto nbrs = g.neighbors(u);
    auto ws = g.neighbor_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const Vertex v = nbrs[i];
      res.residual[v] += share * ws[i];
      if (!queued[v] && over(v)) {
        queued[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return res;
}

}  // namespace nprc
