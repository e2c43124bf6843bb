#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nprclust/data.hpp"
#include "nprclust/pipeline.hpp"

namespace nprc {

/// Balanced F-score of a predicted cluster against the ground truth; 0 when
/// no vertex is shared. Throws EmptyTruth for an empty truth set.
double fscore(const VertexSet& predicted, const VertexSet& truth);

/// Vertices sharing the label of `seed`.
VertexSet truth_cluster(const Graph& g, const std::vector<Label>& labels, Vertex seed);

enum class Method { Npr, Appr };
const char* to_string(Method m);

struct Protocol {
  int repetitions = 50;
  std::uint64_t rng_seed = 1;
  Method method = Method::Npr;
  NprConfig npr;
  ApprConfig appr;
  /// Draw seeds only from this label class.
  std::optional<Label> restrict_label;
  /// Explicit seed vertices, used in order instead of random draws.
  std::vector<Vertex> seed_vertices;
  /// Worker count; 0 means hardware concurrency.
  int threads = 1;
};

struct PerPRecord {
  double p = 0.0;
  double phi = 0.0;
  double fscore = 0.0;
  int iterations = 0;
  LmStatus status = LmStatus::Converged;
};

struct ExperimentRecord {
  int repetition = 0;
  Vertex seed = 0;
  double best_p = 0.0;  ///< 0 for APPR
  double phi = 0.0;
  double fscore = 0.0;
  int iterations = 0;   ///< LM trials summed over the schedule, or APPR pushes
  double wall_seconds = 0.0;
  std::size_t cluster_size = 0;
  std::size_t truth_size = 0;
  std::string error;    ///< nonempty when the run failed
  std::vector<PerPRecord> per_p;

  bool ok() const { return error.empty(); }
};

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  ///< sample standard deviation, 0 for fewer than two values
  std::size_t count = 0;
};

Aggregate aggregate(const std::vector<double>& values);

struct ExperimentReport {
  Method method = Method::Npr;
  std::vector<ExperimentRecord> records;
  Aggregate phi;
  Aggregate fscore;
  std::size_t failures = 0;

  /// Recomputes the aggregates from the successful records.
  void recompute();
};

/// Draws the seed vertices a protocol will use, in repetition order.
std::vector<Vertex> draw_seeds(const Graph& g, const std::vector<Label>& labels,
                               const Protocol& protocol);

/// Repeated-random-seed protocol; repetitions may run concurrently but the
/// report is assembled in repetition order.
ExperimentReport run_experiment(const Graph& g, const std::vector<Label>& labels,
                                const Protocol& protocol);

}  // namespace nprc
