#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tricomm/hypergraph.hpp"

namespace tricomm {

/// Renumbers labels to 0..c-1 in order of first appearance.
std::vector<Label> canonicalize(std::span<const Label> labels);

/// Number of distinct values, given labels that are contiguous from 0.
std::size_t count_communities(std::span<const Label> labels);

/// Per-color community assignment. Labels are contiguous per color: every
/// value in 0..c-1 occurs at least once.
class Partition {
 public:
  Partition() = default;
  /// Validates contiguity; throws DomainError otherwise.
  explicit Partition(std::array<std::vector<Label>, 3> labels);

  static Partition singletons(std::array<std::size_t, 3> counts);
  static Partition all_one(std::array<std::size_t, 3> counts);
  /// Canonicalizes arbitrary labels first.
  static Partition from_raw(std::array<std::vector<Label>, 3> labels);

  std::span<const Label> labels(Color c) const { return labels_[index(c)]; }
  Label label(Color c, NodeId v) const { return labels_[index(c)][v]; }
  std::size_t size(Color c) const { return labels_[index(c)].size(); }
  std::size_t communities(Color c) const { return counts_[index(c)]; }
  std::array<std::size_t, 3> communities() const { return counts_; }

  /// Throws DomainError when node counts differ from the hypergraph's.
  void check_matches(const TripartiteHypergraph& graph) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::array<std::vector<Label>, 3> labels_;
  std::array<std::size_t, 3> counts_{0, 0, 0};
};

/// JSON object {"red": [...], "green": [...], "blue": [...]}.
void save_partition(const Partition& partition, std::ostream& out);
void save_partition_file(const Partition& partition, const std::string& path);
Partition load_partition(std::istream& in);
Partition load_partition(std::istream& in, const TripartiteHypergraph& graph);
Partition load_partition_file(const std::string& path);

}  // namespace tricomm
