#include "tricomm/synth.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace tricomm {

double GeneratorConfig::expected_edges() const {
  const double block = static_cast<double>(nodes_per_comm) * static_cast<double>(nodes_per_comm) *
                       static_cast<double>(nodes_per_comm);
  const double blocks = static_cast<double>(communities[0]) * static_cast<double>(communities[1]) *
                        static_cast<double>(communities[2]);
  const double dense = static_cast<double>(dense_triples.size());
  return block * (dense * p_dense + (blocks - dense) * p_sparse);
}

void GeneratorConfig::validate() const {
  for (std::size_t c : communities) {
    if (c == 0) throw DomainError("community counts must be positive");
  }
  if (nodes_per_comm == 0) throw DomainError("nodes_per_comm must be positive");
  if (!(p_dense >= 0.0 && p_dense <= 1.0)) throw DomainError("p_dense must lie in [0, 1]");
  if (!(p_sparse >= 0.0 && p_sparse <= 1.0)) throw DomainError("p_sparse must lie in [0, 1]");
  if (p_sparse > p_dense) throw DomainError("p_sparse must not exceed p_dense");
  if (dense_triples.empty()) throw DomainError("dense_triples must be nonempty");
  std::array<std::vector<bool>, 3> covered;
  for (std::size_t c = 0; c < 3; ++c) covered[c].assign(communities[c], false);
  for (const auto& t : dense_triples) {
    for (std::size_t c = 0; c < 3; ++c) {
      if (t[c] >= communities[c]) throw DomainError("dense triple out of range");
      covered[c][t[c]] = true;
    }
  }
  for (std::size_t c = 0; c < 3; ++c) {
    if (std::find(covered[c].begin(), covered[c].end(), false) != covered[c].end()) {
      throw DomainError(std::string("some ") + color_name(kColors[c]) +
                        " community is in no dense triple");
    }
  }
}

GeneratorConfig preset_one_to_one(std::size_t communities, std::size_t nodes_per_comm, double p_dense,
                                  double p_sparse, std::uint64_t seed) {
  if (communities == 0) throw DomainError("community count must be positive");
  GeneratorConfig config;
  config.communities = {communities, communities, communities};
  config.nodes_per_comm = nodes_per_comm;
  for (Label a = 0; a < communities; ++a) config.dense_triples.push_back({a, a, a});
  config.p_dense = p_dense;
  config.p_sparse = p_sparse;
  config.seed = seed;
  return config;
}

GeneratorConfig preset_many_to_many(std::array<std::size_t, 3> communities, std::size_t triples_count,
                                    std::size_t nodes_per_comm, double p_dense, double p_sparse,
                                    std::uint64_t seed) {
  for (std::size_t c : communities) {
    if (c == 0) throw DomainError("community counts must be positive");
  }
  const std::size_t total = communities[0] * communities[1] * communities[2];
  const std::size_t widest = *std::max_element(communities.begin(), communities.end());
  if (triples_count > total) {
    throw DomainError("triples_count " + std::to_string(triples_count) + " exceeds the " +
                      std::to_string(total) + " available community triples");
  }
  if (triples_count < widest) {
    throw DomainError("triples_count must be at least the largest community count");
  }

  std::vector<std::array<Label, 3>> all;
  all.reserve(total);
  for (Label a = 0; a < communities[0]; ++a) {
    for (Label b = 0; b < communities[1]; ++b) {
      for (Label g = 0; g < communities[2]; ++g) all.push_back({a, b, g});
    }
  }

  // Separate stream from the one generate() uses for edges.
  std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc908ULL);
  constexpr std::size_t kMaxAttempts = 1'000'000;
  for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::array<Label, 3>> chosen(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(triples_count));
    std::array<std::vector<bool>, 3> covered;
    for (std::size_t c = 0; c < 3; ++c) covered[c].assign(communities[c], false);
    for (const auto& t : chosen) {
      for (std::size_t c = 0; c < 3; ++c) covered[c][t[c]] = true;
    }
    const bool full = std::all_of(covered.begin(), covered.end(), [](const std::vector<bool>& v) {
      return std::find(v.begin(), v.end(), false) == v.end();
    });
    if (!full) continue;
    std::sort(chosen.begin(), chosen.end());
    GeneratorConfig config;
    config.communities = communities;
    config.nodes_per_comm = nodes_per_comm;
    config.dense_triples = std::move(chosen);
    config.p_dense = p_dense;
    config.p_sparse = p_sparse;
    config.seed = seed;
    return config;
  }
  throw DomainError("could not draw a covering set of dense triples");
}

GeneratedInstance generate(const GeneratorConfig& config) {
  config.validate();
  const double expected = config.expected_edges();
  if (expected > config.max_expected_edges) {
    throw DomainError("expected edge count " + std::to_string(expected) + " exceeds the cap of " +
                      std::to_string(config.max_expected_edges));
  }

  const std::size_t n = config.nodes_per_comm;
  const auto counts = config.node_counts();
  std::array<std::vector<Label>, 3> truth;
  for (std::size_t c = 0; c < 3; ++c) {
    truth[c].resize(counts[c]);
    for (std::size_t v = 0; v < counts[c]; ++v) truth[c][v] = static_cast<Label>(v / n);
  }

  const auto& [cr, cg, cb] = config.communities;
  std::vector<bool> dense(cr * cg * cb, false);
  for (const auto& t : config.dense_triples) dense[(t[0] * cg + t[1]) * cb + t[2]] = true;

  std::mt19937_64 rng(config.seed);
  const std::uint64_t block = static_cast<std::uint64_t>(n) * n * n;
  std::vector<Hyperedge> edges;
  edges.reserve(static_cast<std::size_t>(expected * 1.1) + 16);
  for (std::size_t a = 0; a < cr; ++a) {
    for (std::size_t b = 0; b < cg; ++b) {
      for (std::size_t g = 0; g < cb; ++g) {
        const double p = dense[(a * cg + b) * cb + g] ? config.p_dense : config.p_sparse;
        if (p <= 0.0) continue;
        auto emit = [&](std::uint64_t pos) {
          edges.push_back({static_cast<NodeId>(a * n + pos / (n * n)),
                           static_cast<NodeId>(b * n + (pos / n) % n),
                           static_cast<NodeId>(g * n + pos % n), 1});
        };
        if (p >= 1.0) {
          for (std::uint64_t pos = 0; pos < block; ++pos) emit(pos);
          continue;
        }
        std::geometric_distribution<std::uint64_t> gap(p);
        std::uint64_t pos = gap(rng);
        while (pos < block) {
          emit(pos);
          const std::uint64_t skip = gap(rng);
          if (skip >= block - pos - 1) break;
          pos += skip + 1;
        }
      }
    }
  }
  if (edges.size() < config.min_edges) {
    throw DomainError("generated " + std::to_string(edges.size()) + " edges, fewer than the required " +
                      std::to_string(config.min_edges));
  }
  GeneratedInstance out{TripartiteHypergraph(counts, std::move(edges)), Partition(std::move(truth))};
  return out;
}

}  // namespace tricomm
