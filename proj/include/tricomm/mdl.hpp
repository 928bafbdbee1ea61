#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "tricomm/hypergraph.hpp"
#include "tricomm/partition.hpp"

namespace tricomm {

/// log2 of the binomial coefficient C(n, k). Accurate for n up to ~1e18.
/// Throws DomainError when k > n.
double log2_binomial(std::uint64_t n, std::uint64_t k);

/// Index codelength L(Y) in bits:
///   n_r log c_r + n_g log c_g + n_b log c_b + c_r c_g c_b log(m + 1).
/// Node and community counts must be positive, m nonnegative.
double description_length_index(std::array<std::uint64_t, 3> nodes,
                                std::array<std::uint64_t, 3> communities, std::uint64_t m);

struct Quality {
  double q = 0.0;
  double l_index = 0.0;
  double l_recover = 0.0;
};

/// Recovery codelength L(X|Y): sum over nonzero connectivity cells of
/// log2 C(n_a * n_b * n_g, M_abg), with size-weighted community sizes.
double description_length_recover(const TripartiteHypergraph& graph, const Partition& partition);

/// Q = L(Y) + L(X|Y), evaluated from scratch.
Quality quality(const TripartiteHypergraph& graph, const Partition& partition);

/// Connectivity cell key (alpha, beta, gamma).
struct CellKey {
  Label red;
  Label green;
  Label blue;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

/// Target label meaning "a new singleton community".
inline constexpr Label kFreshLabel = std::numeric_limits<Label>::max();

/// Partition of a hypergraph plus cached community sizes, the sparse
/// connectivity tensor M and the current description lengths. Supports exact
/// O(local) evaluation and application of single-node moves.
///
/// Community labels are slots in 0..n-1 per color; emptied slots are recycled
/// for fresh singletons and only renumbered by partition().
class MdlState {
 public:
  MdlState(const TripartiteHypergraph& graph, const Partition& partition);

  const TripartiteHypergraph& graph() const { return *graph_; }

  Label label(Color c, NodeId v) const { return labels_[index(c)][v]; }
  std::span<const Label> labels(Color c) const { return labels_[index(c)]; }
  /// Canonical (contiguous, first-appearance) partition of the current state.
  Partition partition() const;

  std::size_t communities(Color c) const { return num_communities_[index(c)]; }
  bool is_live(Color c, Label l) const { return l < members_[index(c)].size() && members_[index(c)][l] > 0; }
  Weight community_size(Color c, Label l) const { return comm_size_[index(c)][l]; }
  std::size_t community_members(Color c, Label l) const { return members_[index(c)][l]; }
  /// Live labels of color c, ascending.
  std::vector<Label> live_labels(Color c) const;
  /// Number of nonzero connectivity cells touching a community.
  std::size_t community_cells(Color c, Label l) const { return cells_[index(c)][l].size(); }

  /// Nonzero M entries, sorted by key.
  std::vector<std::pair<CellKey, Weight>> connectivity() const;
  Weight connectivity_at(CellKey key) const;

  double q() const { return l_index_ + l_recover_; }
  double l_index() const { return l_index_; }
  double l_recover() const { return l_recover_; }
  Quality quality() const { return {q(), l_index_, l_recover_}; }

  /// Q(after relabeling node v to target) - Q(now). target is a live label
  /// of color c or kFreshLabel. Does not mutate.
  double delta_q(Color c, NodeId v, Label target) const;

  /// Relabels node v; returns the applied delta.
  double apply_move(Color c, NodeId v, Label target);

  /// Live labels of color c sharing a connectivity pair with node v's
  /// incident hyperedges, sorted ascending. Includes v's own label when it
  /// qualifies.
  std::vector<Label> candidate_labels(Color c, NodeId v) const;

  /// Precomputed per-node quantities reused across candidate evaluations.
  struct MoveContext {
    Color color;
    NodeId node;
    Label source;
    Weight node_size;
    bool source_empties;
    std::vector<std::pair<std::uint64_t, Weight>> incident;  // pair key -> weight, sorted
    double removal = 0.0;  // recover delta of taking v out of its community
  };
  MoveContext prepare_move(Color c, NodeId v) const;
  double delta_q(const MoveContext& ctx, Label target) const;

  /// Delta of moving ctx.node into each candidate community other than its
  /// own, as (label, delta) sorted by label. Candidates are the labels
  /// sharing a connectivity pair with the node, or every live label when
  /// all_live is set. Agrees with delta_q up to rounding; cost grows with the
  /// node's overlap with the candidates rather than with their row sizes.
  /// Uses internal scratch space, so concurrent calls on one state are unsafe.
  void score_moves(const MoveContext& ctx, bool all_live, std::vector<std::pair<Label, double>>& out) const;

 private:
  using PairKey = std::uint64_t;
  using PairMap = std::unordered_map<PairKey, Weight>;

  static PairKey pair_key(Label a, Label b) { return (static_cast<std::uint64_t>(a) << 32) | b; }
  static Label pair_first(PairKey k) { return static_cast<Label>(k >> 32); }
  static Label pair_second(PairKey k) { return static_cast<Label>(k & 0xffffffffu); }

  /// Product of the sizes of the two other-color communities in a pair key.
  Weight pair_capacity(Color c, PairKey key) const;
  PairKey incident_pair(Color c, const Hyperedge& e) const;
  void set_cell(CellKey key, Weight new_value);
  double index_length(std::array<std::uint64_t, 3> counts) const;
  /// Change in the recover bits of community t's existing cells when its size
  /// grows by node_size, cached until t's cells or capacities change.
  double grow_bits(Color c, Label t, Weight node_size) const;
  void invalidate_grow(Color c, Label l);

  const TripartiteHypergraph* graph_;
  std::array<std::vector<Label>, 3> labels_;
  std::array<std::vector<Weight>, 3> comm_size_;
  std::array<std::vector<std::size_t>, 3> members_;
  std::array<std::vector<Label>, 3> free_labels_;
  std::array<std::vector<Label>, 3> live_;
  std::array<std::vector<std::size_t>, 3> live_pos_;
  std::array<std::size_t, 3> num_communities_{0, 0, 0};

  // cells_[c][l] maps the pair of other-color labels to M for community l of color c.
  std::array<std::vector<PairMap>, 3> cells_;
  // pair_members_[c][pair] lists (label, M) for each label of color c with nonzero M at pair,
  // unordered. Kept flat because it is scanned far more often than it changes.
  std::array<std::unordered_map<PairKey, std::vector<std::pair<Label, Weight>>>, 3> pair_members_;

  struct GrowTerm {
    Weight node_size = 0;
    double bits = 0.0;
    bool valid = false;
  };
  mutable std::array<std::vector<GrowTerm>, 3> grow_;
  mutable std::vector<double> overlap_;
  mutable std::vector<char> overlap_seen_;
  mutable std::vector<Label> overlap_labels_;

  double l_index_ = 0.0;
  double l_recover_ = 0.0;
};

}  // namespace tricomm
