#include "nprclust/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace nprc {

namespace {

std::string edge_str(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

}  // namespace

Graph Graph::build(std::vector<Edge> edges, Vertex num_vertices) {
  if (edges.empty()) throw Error(ErrorCode::EmptyInput, "graph has no edges");

  Vertex max_id = -1;
  for (auto& e : edges) {
    if (e.u < 0 || e.v < 0)
      throw Error(ErrorCode::InvalidArgument, "negative vertex id in edge " + edge_str(e));
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw Error(ErrorCode::NonpositiveWeight, "edge " + edge_str(e) + " has weight " + std::to_string(e.w));
    if (e.u > e.v) std::swap(e.u, e.v);
    max_id = std::max(max_id, e.v);
  }
  if (num_vertices != 0 && num_vertices <= max_id)
    throw Error(ErrorCode::InvalidArgument, "vertex id exceeds declared vertex count");

  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
      throw Error(ErrorCode::DuplicateEdge, "duplicate edge " + edge_str(edges[i]));
  }

  Graph g;
  g.n_ = std::max(num_vertices, max_id + 1);
  g.edges_ = std::move(edges);

  const auto n = static_cast<std::size_t>(g.n_);
  std::vector<std::size_t> count(n + 1, 0);
  for (const auto& e : g.edges_) {
    ++count[e.u + 1];
    ++count[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) count[i + 1] += count[i];
  g.row_ptr_ = count;
  g.adj_.resize(2 * g.edges_.size());
  g.adj_w_.resize(2 * g.edges_.size());
  g.adj_e_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(count.begin(), count.end() - 1);
  for (std::size_t k = 0; k < g.edges_.size(); ++k) {
    const auto& e = g.edges_[k];
    auto a = fill[e.u]++;
    g.adj_[a] = e.v;
    g.adj_w_[a] = e.w;
    g.adj_e_[a] = k;
    auto b = fill[e.v]++;
    g.adj_[b] = e.u;
    g.adj_w_[b] = e.w;
    g.adj_e_[b] = k;
  }
  // Neighbors within a row are sorted by id because edges are sorted and every
  // row receives its smaller neighbors (as terminus) before its larger ones.

  g.degrees_ = Eigen::VectorXd::Zero(g.n_);
  for (const auto& e : g.edges_) {
    g.degrees_[e.u] += e.w;
    g.degrees_[e.v] += e.w;
  }
  g.total_volume_ = g.degrees_.sum();

  int components = 0;
  connected_components(g.n_, g.edges_, &components);
  if (components != 1)
    throw Error(ErrorCode::DisconnectedGraph,
                "graph has " + std::to_string(components) + " connected components");
  return g;
}

VertexSet::VertexSet(const Graph& g) : member_(g.num_vertices(), 0) {}

VertexSet::VertexSet(const Graph& g, std::span<const Vertex> members) : VertexSet(g) {
  for (auto v : members) insert(g, v);
}

void VertexSet::insert(const Graph& g, Vertex v) {
  if (v < 0 || v >= g.num_vertices())
    throw Error(ErrorCode::InvalidArgument, "vertex " + std::to_string(v) + " out of range");
  if (member_[v]) return;
  member_[v] = 1;
  ++count_;
  volume_ += g.degree(v);
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  for (std::size_t v = 0; v < member_.size(); ++v)
    if (member_[v]) out.push_back(static_cast<Vertex>(v));
  return out;
}

double boundary_weight(const Graph& g, const VertexSet& s) {
  double cut = 0.0;
  for (const auto& e : g.edges())
    if (s.contains(e.u) != s.contains(e.v)) cut += e.w;
  return cut;
}

double conductance(const Graph& g, const VertexSet& s) {
  if (s.universe() != static_cast<std::size_t>(g.num_vertices()))
    throw Error(ErrorCode::DimensionMismatch, "vertex set built for another graph");
  if (s.size() == 0 || s.size() == s.universe())
    throw Error(ErrorCode::EmptyOrFullSet, "conductance needs a nonempty proper subset");
  const double vol = s.volume();
  return boundary_weight(g, s) / std::min(vol, g.total_volume() - vol);
}

std::vector<double> edge_lengths(const Graph& g, EdgeLength mode) {
  std::vector<double> len(g.num_edges());
  for (std::size_t k = 0; k < len.size(); ++k)
    len[k] = mode == EdgeLength::InverseWeight ? 1.0 / g.edges()[k].w : g.edges()[k].w;
  return len;
}

std::vector<double> shortest_distances(const Graph& g, Vertex source,
                                       std::span<const double> lengths) {
  if (source < 0 || source >= g.num_vertices())
    throw Error(ErrorCode::InvalidArgument, "source vertex out of range");
  if (lengths.size() != g.num_edges())
    throw Error(ErrorCode::DimensionMismatch, "one length per edge expected");

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.num_vertices(), inf);
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    auto nbrs = g.neighbors(u);
    auto eids = g.neighbor_edges(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const double len = lengths[eids[i]];
      if (!(len > 0.0))
        throw Error(ErrorCode::InvalidArgument, "edge lengths must be positive");
      const double nd = d + len;
      if (nd < dist[nbrs[i]]) {
        dist[nbrs[i]] = nd;
        heap.emplace(nd, nbrs[i]);
      }
    }
  }
  return dist;
}

Vertex furthest_vertex(const Graph& g, Vertex source, std::span<const double> lengths) {
  auto dist = shortest_distances(g, source, lengths);
  Vertex best = 0;
  for (Vertex v = 1; v < g.num_vertices(); ++v)
    if (dist[v] > dist[best]) best = v;
  return best;
}

Vertex furthest_vertex(const Graph& g, Vertex source, EdgeLength mode) {
  auto len = edge_lengths(g, mode);
  return furthest_vertex(g, source, len);
}

std::vector<int> connected_components(Vertex n, std::span<const Edge> edges, int* count) {
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> comp(n, -1);
  int c = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex v : adj[u])
        if (comp[v] < 0) {
          comp[v] = c;
          stack.push_back(v);
        }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

}  // namespace nprc
