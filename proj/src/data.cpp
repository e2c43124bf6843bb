#include "nprclust/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace nprc {

void PointCloud::validate() const {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "point cloud has zero dimension");
  if (coords.size() % dim != 0)
    throw Error(ErrorCode::DimensionMismatch, "coordinate count is not a multiple of the dimension");
  if (!labels.empty() && labels.size() != size())
    throw Error(ErrorCode::DimensionMismatch, "label count does not match point count");
}

std::pair<double, double> gaussian_group_centre(int groups, int index, double grid_spacing) {
  const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(groups))));
  return {grid_spacing * (index % side), grid_spacing * (index / side)};
}

PointCloud gen_gaussian_groupings(int groups, int per_group, double variance,
                                  double grid_spacing, std::uint64_t rng_seed) {
  if (groups < 1 || per_group < 1)
    throw Error(ErrorCode::InvalidArgument, "need at least one group with one point");
  if (!(variance > 0.0)) throw Error(ErrorCode::InvalidArgument, "variance must be positive");
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(variance));
  PointCloud pc;
  pc.dim = 2;
  pc.coords.reserve(2 * static_cast<std::size_t>(groups) * per_group);
  pc.labels.reserve(static_cast<std::size_t>(groups) * per_group);
  for (int gi = 0; gi < groups; ++gi) {
    auto [cx, cy] = gaussian_group_centre(groups, gi, grid_spacing);
    for (int i = 0; i < per_group; ++i) {
      const double x = cx + normal(rng);
      const double y = cy + normal(rng);
      pc.coords.push_back(x);
      pc.coords.push_back(y);
      pc.labels.push_back(gi);
    }
  }
  return pc;
}

double gaussian_beta_preset(int groups) {
  if (groups <= 5) return 1e-4;
  if (groups <= 13) return 1e-3;
  return 5e-3;
}

namespace {

constexpr double kDistanceFloor = 1e-12;

// Keeps the largest connected component of an edge list over n vertices and
// relabels it densely. Ties between equally large components go to the one
// holding the smallest vertex id.
BuiltGraph keep_largest_component(Vertex n, std::vector<Edge> edges,
                                  const std::vector<std::int64_t>& ids) {
  int count = 0;
  auto comp = connected_components(n, edges, &count);
  std::vector<std::size_t> sizes(count, 0);
  for (int c : comp) ++sizes[c];
  const int keep = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<Vertex> remap(n, -1);
  std::vector<std::int64_t> source_ids;
  for (Vertex v = 0; v < n; ++v) {
    if (comp[v] == keep) {
      remap[v] = static_cast<Vertex>(source_ids.size());
      source_ids.push_back(ids[v]);
    }
  }
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (const auto& e : edges)
    if (comp[e.u] == keep) kept.push_back({remap[e.u], remap[e.v], e.w});
  const std::size_t dropped = static_cast<std::size_t>(n) - source_ids.size();
  return {Graph::build(std::move(kept)), std::move(source_ids), dropped};
}

}  // namespace

BuiltGraph build_knn_graph(const PointCloud& pc, int k) {
  pc.validate();
  const std::size_t n = pc.size();
  if (k < 1 || static_cast<std::size_t>(k) >= n)
    throw Error(ErrorCode::InvalidArgument, "k must satisfy 1 <= k < number of points");

  // Brute force: for each point, the k closest others by (distance, index).
  std::vector<std::vector<std::size_t>> nn(n);
  std::vector<double> kth(n);
  std::vector<std::pair<double, std::size_t>> cand(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double d2 = 0.0;
      for (std::size_t a = 0; a < pc.dim; ++a) {
        const double diff = pc.point(i)[a] - pc.point(j)[a];
        d2 += diff * diff;
      }
      cand[c++] = {d2, j};
    }
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    nn[i].reserve(k);
    for (int t = 0; t < k; ++t) nn[i].push_back(cand[t].second);
    kth[i] = std::max(std::sqrt(cand[k - 1].first), kDistanceFloor);
  }

  std::vector<Edge> edges;
  edges.reserve(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : nn[i]) edges.push_back({static_cast<Vertex>(std::min(i, j)),
                                                 static_cast<Vertex>(std::max(i, j)), 0.0});
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  for (auto& e : edges) {
    double d2 = 0.0;
    for (std::size_t a = 0; a < pc.dim; ++a) {
      const double diff = pc.point(e.u)[a] - pc.point(e.v)[a];
      d2 += diff * diff;
    }
    // nu carries the floor, so coincident points get exp(0) = 1 rather than 0/0.
    const double nu = std::max(kth[e.u], kth[e.v]);
    e.w = std::exp(-4.0 * d2 / (nu * nu));
  }

  std::vector<std::int64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<std::int64_t>(i);
  return keep_largest_component(static_cast<Vertex>(n), std::move(edges), ids);
}

BuiltGraph build_cost_graph(const CostTable& table, IotaMode mode) {
  if (table.empty()) throw Error(ErrorCode::EmptyInput, "cost table is empty");

  std::vector<std::int64_t> ids;
  ids.reserve(2 * table.size());
  for (const auto& r : table) {
    if (!(r.cost > 0.0) || !std::isfinite(r.cost))
      throw Error(ErrorCode::InvalidArgument,
                  "cost from " + std::to_string(r.from) + " to " + std::to_string(r.to) +
                      " is not positive");
    if (r.from == r.to)
      throw Error(ErrorCode::SelfLoop, "cost record loops at site " + std::to_string(r.from));
    ids.push_back(r.from);
    ids.push_back(r.to);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index_of = [&](std::int64_t id) {
    return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  // Average each direction first, then the two directions.
  std::map<std::pair<Vertex, Vertex>, std::pair<double, int>> directed;
  for (const auto& r : table) {
    auto& slot = directed[{index_of(r.from), index_of(r.to)}];
    slot.first += r.cost;
    slot.second += 1;
  }
  std::map<std::pair<Vertex, Vertex>, std::pair<double, int>> undirected;
  for (const auto& [key, val] : directed) {
    auto [a, b] = key;
    auto& slot = undirected[{std::min(a, b), std::max(a, b)}];
    slot.first += val.first / val.second;
    slot.second += 1;
  }

  const Vertex n = static_cast<Vertex>(ids.size());
  std::vector<Edge> edges;
  edges.reserve(undirected.size());
  std::vector<double> iota_sum(n, 0.0);
  std::vector<int> iota_cnt(n, 0);
  for (const auto& [key, val] : undirected) {
    const double chi = val.first / val.second;
    edges.push_back({key.first, key.second, chi});
    iota_sum[key.first] += chi;
    iota_sum[key.second] += chi;
    ++iota_cnt[key.first];
    ++iota_cnt[key.second];
  }
  for (auto& e : edges) {
    const double chi = e.w;
    const double iu = iota_sum[e.u] / iota_cnt[e.u];
    const double iv = iota_sum[e.v] / iota_cnt[e.v];
    if (mode == IotaMode::MaxIota) {
      const double m = std::max(iu, iv);
      e.w = std::exp(-2.0 * chi * chi / (m * m));
    } else {
      e.w = 0.5 * (std::exp(-2.0 * chi * chi / (iu * iu)) + std::exp(-2.0 * chi * chi / (iv * iv)));
    }
    if (!(e.w > 0.0)) e.w = std::numeric_limits<double>::min();
  }
  return keep_largest_component(n, std::move(edges), ids);
}

// ---------------------------------------------------------------------------

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path + " for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << std::setprecision(17);
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Strips comments and surrounding whitespace; empty result means skip.
std::string_view content(std::string_view line) {
  if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
  return trim(line);
}

std::vector<std::string_view> split(std::string_view s, bool comma) {
  std::vector<std::string_view> out;
  if (comma) {
    std::size_t start = 0;
    while (true) {
      auto pos = s.find(',', start);
      out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  } else {
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
      if (i >= s.size()) break;
      std::size_t j = i;
      while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
      out.push_back(s.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, const std::string& src, std::size_t line, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
    throw ParseError(src, line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
  return value;
}

}  // namespace

Graph load_edge_list(const std::string& path) {
  auto in = open_in(path);
  std::vector<Edge> edges;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto s = content(raw);
    if (s.empty()) continue;
    auto tok = split(s, false);
    if (tok.size() != 2 && tok.size() != 3)
      throw ParseError(path, line, "expected 'u v w', got " + std::to_string(tok.size()) + " fields");
    Edge e;
    e.u = parse_number<Vertex>(tok[0], path, line, "vertex id");
    e.v = parse_number<Vertex>(tok[1], path, line, "vertex id");
    e.w = tok.size() == 3 ? parse_number<double>(tok[2], path, line, "weight") : 1.0;
    edges.push_back(e);
  }
  return Graph::build(std::move(edges));
}

void save_edge_list(const Graph& g, const std::string& path) {
  auto out = open_out(path);
  out << "# " << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
  for (const auto& e : g.edges()) out << e.u << '\t' << e.v << '\t' << e.w << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

PointCloud load_points(const std::string& path) {
  auto in = open_in(path);
  PointCloud pc;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto s = content(raw);
    if (s.empty()) continue;
    auto tok = split(s, true);
    if (pc.dim == 0) pc.dim = tok.size();
    if (tok.size() != pc.dim)
      throw ParseError(path, line, "expected " + std::to_string(pc.dim) + " coordinates, got " +
                                       std::to_string(tok.size()));
    for (auto t : tok) pc.coords.push_back(parse_number<double>(t, path, line, "coordinate"));
  }
  if (pc.dim == 0) throw Error(ErrorCode::EmptyInput, path + " holds no points");
  return pc;
}

void save_points(const PointCloud& pc, const std::string& path) {
  pc.validate();
  auto out = open_out(path);
  for (std::size_t i = 0; i < pc.size(); ++i) {
    for (std::size_t a = 0; a < pc.dim; ++a) out << (a ? "," : "") << pc.point(i)[a];
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

std::vector<Label> load_labels(const std::string& path) {
  auto in = open_in(path);
  std::vector<Label> labels;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto s = content(raw);
    if (s.empty()) continue;
    labels.push_back(parse_number<Label>(s, path, line, "label"));
  }
  return labels;
}

void save_labels(const std::vector<Label>& labels, const std::string& path) {
  auto out = open_out(path);
  for (auto l : labels) out << l << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

CostTable load_cost_table(const std::string& path) {
  auto in = open_in(path);
  CostTable table;
  std::string raw;
  std::size_t line = 0;
  bool header = true;
  while (std::getline(in, raw)) {
    ++line;
    auto s = content(raw);
    if (s.empty()) continue;
    auto tok = split(s, true);
    if (header) {
      header = false;
      if (tok.size() == 3 && !tok[0].empty() && !(std::isdigit(static_cast<unsigned char>(tok[0][0])) || tok[0][0] == '-'))
        continue;
    }
    if (tok.size() != 3) throw ParseError(path, line, "expected 'u,v,cost'");
    table.push_back({parse_number<std::int64_t>(tok[0], path, line, "site id"),
                     parse_number<std::int64_t>(tok[1], path, line, "site id"),
                     parse_number<double>(tok[2], path, line, "cost")});
  }
  if (table.empty()) throw Error(ErrorCode::EmptyInput, path + " holds no cost records");
  return table;
}

LabeledGraph load_lfr(const std::string& network_path, const std::string& community_path) {
  auto in = open_in(network_path);
  std::vector<Edge> edges;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto s = content(raw);
    if (s.empty()) continue;
    auto tok = split(s, false);
    if (tok.size() < 2) throw ParseError(network_path, line, "expected 'u v'");
    const auto u = parse_number<Vertex>(tok[0], network_path, line, "vertex id");
    const auto v = parse_number<Vertex>(tok[1], network_path, line, "vertex id");
    if (u < 1 || v < 1) throw ParseError(network_path, line, "LFR ids are 1-based");
    if (u == v) continue;
    edges.push_back({std::min(u, v) - 1, std::max(u, v) - 1, 1.0});
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  LabeledGraph out{Graph::build(std::move(edges)), {}};

  auto cin = open_in(community_path);
  out.labels.assign(out.graph.num_vertices(), -1);
  line = 0;
  while (std::getline(cin, raw)) {
    ++line;
    auto s = content(raw);
    if (s.empty()) continue;
    auto tok = split(s, false);
    if (tok.size() < 2) throw ParseError(community_path, line, "expected 'vertex community'");
    const auto v = parse_number<Vertex>(tok[0], community_path, line, "vertex id");
    if (v < 1 || v > out.graph.num_vertices())
      throw ParseError(community_path, line, "vertex id out of range");
    out.labels[v - 1] = parse_number<Label>(tok[1], community_path, line, "community");
  }
  for (std::size_t v = 0; v < out.labels.size(); ++v)
    if (out.labels[v] < 0)
      throw Error(ErrorCode::ParseError, community_path + ": vertex " + std::to_string(v + 1) +
                                             " has no community");
  return out;
}

}  // namespace nprc
