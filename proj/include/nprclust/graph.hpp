#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "nprclust/error.hpp"

namespace nprc {

using Vertex = int;

/// One undirected edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 1.0;
};

/**
   Immutable weighted simple connected graph.

   Edges are kept once, sorted lexicographically by (u, v) with u < v. The
   edge index is the row index of the incidence operator, oriented from the
   smaller id (origin) to the larger id (terminus). The CSR adjacency stores
   both directions and remembers which edge each entry came from.
 */
class Graph {
 public:
  /// Validates and builds. The vertex count is max id + 1 unless a larger
  /// `num_vertices` is given (extra vertices would be isolated, which fails
  /// the connectivity check).
  static Graph build(std::vector<Edge> edges, Vertex num_vertices = 0);

  Vertex num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Eigen::VectorXd& degrees() const noexcept { return degrees_; }
  double degree(Vertex v) const { return degrees_[v]; }
  double total_volume() const noexcept { return total_volume_; }

  /// CSR row of v: neighbor ids, weights and originating edge indices.
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + row_ptr_[v], adj_.data() + row_ptr_[v + 1]};
  }
  std::span<const double> neighbor_weights(Vertex v) const {
    return {adj_w_.data() + row_ptr_[v], adj_w_.data() + row_ptr_[v + 1]};
  }
  std::span<const std::size_t> neighbor_edges(Vertex v) const {
    return {adj_e_.data() + row_ptr_[v], adj_e_.data() + row_ptr_[v + 1]};
  }

 private:
  Graph() = default;

  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> row_ptr_;
  std::vector<Vertex> adj_;
  std::vector<double> adj_w_;
  std::vector<std::size_t> adj_e_;
  Eigen::VectorXd degrees_;
  double total_volume_ = 0.0;
};

/// Membership over 0..n-1 with the volume cached.
class VertexSet {
 public:
  explicit VertexSet(const Graph& g);
  VertexSet(const Graph& g, std::span<const Vertex> members);

  void insert(const Graph& g, Vertex v);
  bool contains(Vertex v) const { return member_[v] != 0; }
  std::size_t size() const noexcept { return count_; }
  std::size_t universe() const noexcept { return member_.size(); }
  double volume() const noexcept { return volume_; }
  std::vector<Vertex> members() const;
  const std::vector<std::uint8_t>& mask() const noexcept { return member_; }

  friend bool operator==(const VertexSet& a, const VertexSet& b) {
    return a.member_ == b.member_;
  }

 private:
  std::vector<std::uint8_t> member_;
  std::size_t count_ = 0;
  double volume_ = 0.0;
};

/// Total weight of the edges leaving S.
double boundary_weight(const Graph& g, const VertexSet& s);

/// w(boundary(S)) / min(vol S, vol complement). Throws EmptyOrFullSet.
double conductance(const Graph& g, const VertexSet& s);

enum class EdgeLength {
  InverseWeight,  ///< length = 1 / w, so strongly similar vertices are close
  Weight,         ///< length = w
};

/// Single-source shortest-path distances (Dijkstra) with per-edge lengths
/// indexed like g.edges().
std::vector<double> shortest_distances(const Graph& g, Vertex source,
                                       std::span<const double> lengths);

std::vector<double> edge_lengths(const Graph& g, EdgeLength mode);

/// Vertex at the largest shortest-path distance from `source`; ties go to the
/// smallest id.
Vertex furthest_vertex(const Graph& g, Vertex source,
                       std::span<const double> lengths);
Vertex furthest_vertex(const Graph& g, Vertex source,
                       EdgeLength mode = EdgeLength::InverseWeight);

/// Connected components by BFS; returns a component id per vertex and the
/// number of components. Works on raw edge lists that need not be connected.
std::vector<int> connected_components(Vertex n, std::span<const Edge> edges,
                                      int* count = nullptr);

}  // namespace nprc
