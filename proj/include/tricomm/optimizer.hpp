#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "tricomm/hypergraph.hpp"
#include "tricomm/mdl.hpp"
#include "tricomm/partition.hpp"

namespace tricomm {

struct OptimizerConfig {
  std::uint64_t seed = 0;
  std::size_t restarts = 1;
  double epsilon = 1e-9;  // bits; minimum Q decrease for a move or outer iteration
  std::size_t max_outer_iters = 100;
  std::size_t max_sweeps = 1000;
  /// A color with at most this many communities has all of them evaluated as
  /// move targets; otherwise only communities sharing a connectivity pair
  /// with the node are.
  std::size_t full_scan_limit = 32;

  void validate() const;
};

struct DetectionResult {
  Partition partition;
  double q = 0.0;
  double l_index = 0.0;
  double l_recover = 0.0;
  std::size_t outer_iterations = 0;
  std::size_t total_sweeps = 0;
  std::size_t total_moves = 0;
  std::uint64_t seed_used = 0;
};

struct LocalMovingStats {
  std::size_t sweeps = 0;
  std::size_t moves = 0;
};

/// Greedy single-node relabeling sweeps until no node improves Q by more than
/// epsilon, followed by merging isolated-node communities per color.
LocalMovingStats local_moving(MdlState& state, std::mt19937_64& rng, const OptimizerConfig& config);

/// Contraction of each community to a single sized node.
struct Coarsening {
  TripartiteHypergraph reduced;
  /// mapping[c][v] is the reduced node holding original node v.
  std::array<std::vector<NodeId>, 3> mapping;
};

/// Partition must be canonical (it always is once constructed).
Coarsening coarsen(const TripartiteHypergraph& graph, const Partition& partition);

/// Pulls a partition of the reduced hypergraph back onto the original nodes.
Partition project_labels(const std::array<std::vector<NodeId>, 3>& mapping,
                         const Partition& reduced_partition);

/// Seed of restart r derived from the configured seed; restart 0 uses it as is.
std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart);

/// Single run of the two-phase procedure from singletons.
DetectionResult detect_once(const TripartiteHypergraph& graph, const OptimizerConfig& config,
                            std::uint64_t seed);

/// Best (lowest Q) of config.restarts independent runs.
DetectionResult detect(const TripartiteHypergraph& graph, const OptimizerConfig& config);

}  // namespace tricomm
