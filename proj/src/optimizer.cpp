#include "tricomm/optimizer.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace tricomm {

void OptimizerConfig::validate() const {
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
  if (restarts == 0) throw DomainError("restarts must be positive");
  if (max_outer_iters == 0) throw DomainError("max_outer_iters must be positive");
  if (max_sweeps == 0) throw DomainError("max_sweeps must be positive");
}

namespace {

struct Visit {
  Color color;
  NodeId node;
};

// Communities holding only degree-zero nodes have no candidates to move to;
// folding them into one community per color shrinks L(Y) and leaves L(X|Y) alone.
std::size_t merge_isolated(MdlState& state) {
  std::size_t moves = 0;
  const auto& graph = state.graph();
  for (Color c : kColors) {
    Label sink = kFreshLabel;
    for (NodeId v = 0; v < graph.num_nodes(c); ++v) {
      const Label l = state.label(c, v);
      if (state.community_cells(c, l) != 0) continue;
      if (sink == kFreshLabel) sink = l;
      if (l != sink) {
        state.apply_move(c, v, sink);
        ++moves;
      }
    }
  }
  return moves;
}

}  // namespace

LocalMovingStats local_moving(MdlState& state, std::mt19937_64& rng, const OptimizerConfig& config) {
  const auto& graph = state.graph();
  std::vector<Visit> order;
  for (Color c : kColors) {
    for (NodeId v = 0; v < graph.num_nodes(c); ++v) order.push_back({c, v});
  }

  LocalMovingStats stats;
  std::vector<std::pair<Label, double>> scored;
  while (stats.sweeps < config.max_sweeps) {
    std::shuffle(order.begin(), order.end(), rng);
    ++stats.sweeps;
    std::size_t moved = 0;
    for (const auto& [c, v] : order) {
      if (graph.degree(c, v) == 0) continue;
      const auto ctx = state.prepare_move(c, v);
      double best = 0.0;
      Label best_label = ctx.source;
      state.score_moves(ctx, state.communities(c) <= config.full_scan_limit, scored);
      for (const auto& [t, d] : scored) {
        if (d < best) {
          best = d;
          best_label = t;
        }
      }
      if (!ctx.source_empties) {
        const double d = state.delta_q(ctx, kFreshLabel);
        if (d < best) {
          best = d;
          best_label = kFreshLabel;
        }
      }
      if (best < -config.epsilon) {
        state.apply_move(c, v, best_label);
        ++moved;
      }
    }
    stats.moves += moved;
    if (moved == 0) break;
  }
  stats.moves += merge_isolated(state);
  return stats;
}

Coarsening coarsen(const TripartiteHypergraph& graph, const Partition& partition) {
  partition.check_matches(graph);
  Coarsening out;
  std::array<std::vector<Weight>, 3> sizes;
  for (Color c : kColors) {
    const std::size_t ci = index(c);
    sizes[ci].assign(partition.communities(c), 0);
    out.mapping[ci].resize(graph.num_nodes(c));
    for (NodeId v = 0; v < graph.num_nodes(c); ++v) {
      const Label l = partition.label(c, v);
      sizes[ci][l] += graph.node_size(c, v);
      out.mapping[ci][v] = l;
    }
  }
  std::vector<Hyperedge> edges;
  edges.reserve(graph.num_edges());
  for (const auto& e : graph.edges()) {
    edges.push_back({partition.label(Color::Red, e.red), partition.label(Color::Green, e.green),
                     partition.label(Color::Blue, e.blue), e.weight});
  }
  out.reduced = TripartiteHypergraph(std::move(sizes), std::move(edges));
  return out;
}

Partition project_labels(const std::array<std::vector<NodeId>, 3>& mapping,
                         const Partition& reduced_partition) {
  std::array<std::vector<Label>, 3> labels;
  for (Color c : kColors) {
    const std::size_t ci = index(c);
    labels[ci].reserve(mapping[ci].size());
    for (NodeId r : mapping[ci]) {
      if (r >= reduced_partition.size(c)) {
        throw DomainError(std::string("projection: ") + color_name(c) +
                          " mapping refers past the reduced partition");
      }
      labels[ci].push_back(reduced_partition.label(c, r));
    }
  }
  return Partition(std::move(labels));
}

std::uint64_t restart_seed(std::uint64_t seed, std::size_t restart) {
  if (restart == 0) return seed;
  // splitmix64 finalizer
  std::uint64_t z = static_cast<std::uint64_t>(restart) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return seed ^ (z ^ (z >> 31));
}

DetectionResult detect_once(const TripartiteHypergraph& graph, const OptimizerConfig& config,
                            std::uint64_t seed) {
  config.validate();
  for (Color c : kColors) {
    if (graph.num_nodes(c) == 0) {
      throw DomainError(std::string("detect: no ") + color_name(c) + " nodes");
    }
  }
  std::mt19937_64 rng(seed);
  DetectionResult result;
  result.seed_used = seed;

  MdlState state(graph, Partition::singletons(graph.num_nodes()));
  auto stats = local_moving(state, rng, config);
  result.total_sweeps += stats.sweeps;
  result.total_moves += stats.moves;

  double previous = state.q();
  while (result.outer_iterations < config.max_outer_iters) {
    ++result.outer_iterations;
    const Coarsening coarse = coarsen(graph, state.partition());
    MdlState reduced(coarse.reduced, Partition::singletons(coarse.reduced.num_nodes()));
    stats = local_moving(reduced, rng, config);
    result.total_sweeps += stats.sweeps;
    result.total_moves += stats.moves;

    state = MdlState(graph, project_labels(coarse.mapping, reduced.partition()));
    stats = local_moving(state, rng, config);
    result.total_sweeps += stats.sweeps;
    result.total_moves += stats.moves;

    const double current = state.q();
    assert(current <= previous + 1e-9 * std::max(1.0, std::abs(previous)));
    if (previous - current < config.epsilon) break;
    previous = current;
  }

  result.partition = state.partition();
  result.q = state.q();
  result.l_index = state.l_index();
  result.l_recover = state.l_recover();
  return result;
}

DetectionResult detect(const TripartiteHypergraph& graph, const OptimizerConfig& config) {
  config.validate();
  DetectionResult best;
  for (std::size_t r = 0; r < config.restarts; ++r) {
    DetectionResult run = detect_once(graph, config, restart_seed(config.seed, r));
    if (r == 0 || run.q < best.q) best = std::move(run);
  }
  return best;
}

}  // namespace tricomm
