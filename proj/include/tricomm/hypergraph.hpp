#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tricomm {

using NodeId = std::uint32_t;
using Label = std::uint32_t;
using Weight = std::int64_t;

enum class Color : std::uint8_t { Red = 0, Green = 1, Blue = 2 };

inline constexpr std::array<Color, 3> kColors = {Color::Red, Color::Green, Color::Blue};

constexpr std::size_t index(Color c) { return static_cast<std::size_t>(c); }
const char* color_name(Color c);

/// Thrown for malformed input files; the message names the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Precondition violations on numeric or structural arguments.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Hyperedge {
  NodeId red;
  NodeId green;
  NodeId blue;
  Weight weight;

  NodeId endpoint(Color c) const {
    switch (c) {
      case Color::Red: return red;
      case Color::Green: return green;
      default: return blue;
    }
  }
  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

/// Immutable tripartite hypergraph: three node sets, integer node sizes and a
/// sparse list of weighted three-way hyperedges. Original inputs have unit
/// weights and unit node sizes; coarsened hypergraphs carry aggregated ones.
class TripartiteHypergraph {
 public:
  TripartiteHypergraph() = default;

  /// Unit node sizes. Duplicate (i,j,k) triples are merged by summing weights.
  TripartiteHypergraph(std::array<std::size_t, 3> counts, std::vector<Hyperedge> edges);

  TripartiteHypergraph(std::array<std::vector<Weight>, 3> node_sizes, std::vector<Hyperedge> edges);

  std::size_t num_nodes(Color c) const { return sizes_[index(c)].size(); }
  std::array<std::size_t, 3> num_nodes() const {
    return {sizes_[0].size(), sizes_[1].size(), sizes_[2].size()};
  }

  Weight node_size(Color c, NodeId v) const { return sizes_[index(c)][v]; }
  std::span<const Weight> node_sizes(Color c) const { return sizes_[index(c)]; }
  /// Sum of node sizes of one color, i.e. the node count of the original graph.
  Weight total_size(Color c) const { return total_size_[index(c)]; }

  std::span<const Hyperedge> edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }
  Weight total_weight() const { return total_weight_; }

  /// Indices into edges() of the hyperedges incident to a node.
  std::span<const std::uint32_t> incident(Color c, NodeId v) const;
  std::size_t degree(Color c, NodeId v) const { return incident(c, v).size(); }

  /// True when all node sizes and edge weights are 1.
  bool is_simple() const;

 private:
  void build();

  std::array<std::vector<Weight>, 3> sizes_;
  std::array<Weight, 3> total_size_{0, 0, 0};
  std::vector<Hyperedge> edges_;
  Weight total_weight_ = 0;
  std::array<std::vector<std::uint32_t>, 3> offsets_;
  std::array<std::vector<std::uint32_t>, 3> incidence_;
};

/// Hyperedge list format: '#' comment lines, a "n_red n_green n_blue" header,
/// then one "i j k [w]" line per hyperedge with 0-based indices.
TripartiteHypergraph load_hypergraph(std::istream& in);
TripartiteHypergraph load_hypergraph_file(const std::string& path);
void save_hypergraph(const TripartiteHypergraph& graph, std::ostream& out);

}  // namespace tricomm
