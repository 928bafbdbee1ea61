#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tricomm/hypergraph.hpp"
#include "tricomm/partition.hpp"

namespace tricomm {

/// Planted-partition layout. Node triples whose community triple is listed in
/// dense_triples receive a hyperedge with probability p_dense, all others with
/// p_sparse.
struct GeneratorConfig {
  std::array<std::size_t, 3> communities{1, 1, 1};
  std::size_t nodes_per_comm = 1;
  std::vector<std::array<Label, 3>> dense_triples;
  double p_dense = 0.0;
  double p_sparse = 0.0;
  std::uint64_t seed = 0;
  /// Refuse generation when the expected edge count is above this.
  double max_expected_edges = 1e7;
  /// Refuse generation when fewer edges than this come out.
  std::size_t min_edges = 0;

  std::array<std::size_t, 3> node_counts() const {
    return {communities[0] * nodes_per_comm, communities[1] * nodes_per_comm,
            communities[2] * nodes_per_comm};
  }
  double expected_edges() const;
  void validate() const;
};

/// Sparse rate used when none is given.
inline double default_p_sparse(double p_dense) { return 0.001 * p_dense; }

/// Diagonal layout: community a of every color corresponds to community a of
/// the other two.
GeneratorConfig preset_one_to_one(std::size_t communities, std::size_t nodes_per_comm, double p_dense,
                                  double p_sparse, std::uint64_t seed);

/// triples_count distinct community triples drawn at random, redrawn until
/// every community of every color takes part in at least one.
GeneratorConfig preset_many_to_many(std::array<std::size_t, 3> communities, std::size_t triples_count,
                                    std::size_t nodes_per_comm, double p_dense, double p_sparse,
                                    std::uint64_t seed);

struct GeneratedInstance {
  TripartiteHypergraph graph;
  Partition truth;
};

/// Samples each block of node triples with geometric skips, so the cost is
/// proportional to the number of edges produced.
GeneratedInstance generate(const GeneratorConfig& config);

}  // namespace tricomm
