#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nprclust/graph.hpp"

namespace nprc {

using Label = std::int64_t;

struct PointCloud {
  std::size_t dim = 0;
  std::vector<double> coords;  ///< row-major, size() * dim entries
  std::vector<Label> labels;   ///< empty or one per point

  std::size_t size() const noexcept { return dim ? coords.size() / dim : 0; }
  const double* point(std::size_t i) const { return coords.data() + i * dim; }
  void validate() const;
};

/// Directed cost records, possibly listing both directions of a link.
struct CostRecord {
  std::int64_t from = 0;
  std::int64_t to = 0;
  double cost = 0.0;
};
using CostTable = std::vector<CostRecord>;

/// A graph together with the source id of each of its vertices. Builders that
/// keep only the largest component report what they dropped here.
struct BuiltGraph {
  Graph graph;
  std::vector<std::int64_t> source_ids;  ///< vertex -> original point / site id
  std::size_t dropped_vertices = 0;
};

/**
   Gaussian groupings in the plane: `per_group` points around each of
   `groups` centres laid out row by row on a square grid with the given
   spacing, each coordinate drawn from N(centre, variance). Deterministic for a
   given rng_seed on a given build.
 */
PointCloud gen_gaussian_groupings(int groups, int per_group, double variance,
                                  double grid_spacing, std::uint64_t rng_seed);

/// Centre of group `index` for a layout of `groups` groupings.
std::pair<double, double> gaussian_group_centre(int groups, int index, double grid_spacing);

/// Union-symmetrized k-nearest-neighbour graph with weights
/// exp(-4 |y(u) - y(v)|^2 / nu^2), nu = max of the two k-th neighbour
/// distances, floored at 1e-12. Weights therefore lie in [exp(-4), 1]. Keeps
/// the largest component.
BuiltGraph build_knn_graph(const PointCloud& pc, int k);

enum class IotaMode {
  /// w = (exp(-2 chi^2 / iota(u)^2) + exp(-2 chi^2 / iota(v)^2)) / 2
  AverageSides,
  /// w = exp(-2 chi^2 / max(iota(u), iota(v))^2)
  MaxIota,
};

/// Travel-cost graph: the two directions of a link are averaged into chi,
/// iota(u) is the mean chi over u's links, and w = exp(-2 chi^2 / iota^2)
/// combined across the two endpoints per `mode`. Keeps the largest component.
BuiltGraph build_cost_graph(const CostTable& table, IotaMode mode = IotaMode::AverageSides);

/// Gaussian-grouping beta lookup: 1e-4 up to 5 groups, 1e-3 up to 13,
/// 5e-3 beyond.
double gaussian_beta_preset(int groups);

// -- file formats -------------------------------------------------------------

/// "u<TAB>v<TAB>w" per line, zero-based ids, '#' comments. Any whitespace is
/// accepted as a separator on input; a missing weight defaults to 1.
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

/// One point per row, comma-separated reals. Blank lines and '#' comments are
/// skipped.
PointCloud load_points(const std::string& path);
void save_points(const PointCloud& pc, const std::string& path);

/// One integer label per line; line i is vertex i.
std::vector<Label> load_labels(const std::string& path);
void save_labels(const std::vector<Label>& labels, const std::string& path);

/// "u,v,cost" with a header row.
CostTable load_cost_table(const std::string& path);

/// LFR benchmark pair: network.dat with 1-based "u v" lines (both directions
/// may be listed) and community.dat with 1-based "vertex community" lines.
struct LabeledGraph {
  Graph graph;
  std::vector<Label> labels;
};
LabeledGraph load_lfr(const std::string& network_path, const std::string& community_path);

}  // namespace nprc
