#include "tricomm/mdl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>
#include <vector>

namespace tricomm {

namespace {

// Stirling remainder of ln Gamma(x): ln Gamma(x) - ((x - 1/2) ln x - x + ln(2 pi)/2).
// Truncation error below 5e-13 for x >= 20.
double stirling_remainder(double x) {
  const double x2 = x * x;
  return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * x2)) / x2) / x2) / x;
}

constexpr std::size_t kFactorialTable = 4096;
constexpr std::uint64_t kSmallBinomial = 1024;

double ln_factorial(std::uint64_t k) {
  static const std::vector<double> table = [] {
    std::vector<double> t(kFactorialTable);
    for (std::size_t i = 0; i < kFactorialTable; ++i) t[i] = std::lgamma(static_cast<double>(i) + 1.0);
    return t;
  }();
  return k < kFactorialTable ? table[k] : std::lgamma(static_cast<double>(k) + 1.0);
}

}  // namespace

double log2_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    throw DomainError("log2_binomial: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  }
  const std::uint64_t r = std::min(k, n - k);
  if (r == 0) return 0.0;
  double ln;
  if (n < kSmallBinomial) {
    // ln n! stays below ~6100 here, so table rounding is around 1e-12.
    ln = ln_factorial(n) - ln_factorial(r) - ln_factorial(n - r);
  } else if (r <= 8) {
    // At most eight factors below 2^64 each, so the product stays finite.
    double product = 1.0;
    for (std::uint64_t i = 0; i < r; ++i) {
      product *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    ln = std::log(product);
  } else if (n - r + 1 >= 20) {
    // ln Gamma(a) - ln Gamma(b) with a = n + 1, b = n - r + 1, split so that the
    // large k*ln(a) term never cancels against a comparably large term.
    const double a = static_cast<double>(n) + 1.0;
    const double b = static_cast<double>(n - r) + 1.0;
    const double kk = static_cast<double>(r);
    const double head = (b - 0.5) * std::log1p(kk / b) + kk * std::log(a) - kk;
    ln = head + stirling_remainder(a) - stirling_remainder(b) - ln_factorial(r);
  } else {
    ln = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(r) + 1.0) -
         std::lgamma(static_cast<double>(n - r) + 1.0);
  }
  return ln / std::numbers::ln2;
}

double description_length_index(std::array<std::uint64_t, 3> nodes,
                                std::array<std::uint64_t, 3> communities, std::uint64_t m) {
  double bits = 0.0;
  double cells = 1.0;
  for (std::size_t c = 0; c < 3; ++c) {
    if (nodes[c] == 0 || communities[c] == 0) {
      throw DomainError("description_length_index: counts must be positive");
    }
    bits += static_cast<double>(nodes[c]) * std::log2(static_cast<double>(communities[c]));
    cells *= static_cast<double>(communities[c]);
  }
  return bits + cells * std::log2(static_cast<double>(m) + 1.0);
}

namespace {

std::array<std::uint64_t, 3> total_sizes(const TripartiteHypergraph& graph) {
  return {static_cast<std::uint64_t>(graph.total_size(Color::Red)),
          static_cast<std::uint64_t>(graph.total_size(Color::Green)),
          static_cast<std::uint64_t>(graph.total_size(Color::Blue))};
}

}  // namespace

double description_length_recover(const TripartiteHypergraph& graph, const Partition& partition) {
  partition.check_matches(graph);
  std::array<std::vector<std::uint64_t>, 3> sizes;
  for (Color c : kColors) {
    sizes[index(c)].assign(partition.communities(c), 0);
    for (NodeId v = 0; v < graph.num_nodes(c); ++v) {
      sizes[index(c)][partition.label(c, v)] += static_cast<std::uint64_t>(graph.node_size(c, v));
    }
  }
  std::map<std::tuple<Label, Label, Label>, std::uint64_t> cells;
  for (const auto& e : graph.edges()) {
    cells[{partition.label(Color::Red, e.red), partition.label(Color::Green, e.green),
           partition.label(Color::Blue, e.blue)}] += static_cast<std::uint64_t>(e.weight);
  }
  double bits = 0.0;
  for (const auto& [key, mass] : cells) {
    const auto [a, b, g] = key;
    const std::uint64_t capacity = sizes[0][a] * sizes[1][b] * sizes[2][g];
    if (mass > capacity) {
      throw std::logic_error("connectivity exceeds community capacity");
    }
    bits += log2_binomial(capacity, mass);
  }
  return bits;
}

Quality quality(const TripartiteHypergraph& graph, const Partition& partition) {
  partition.check_matches(graph);
  Quality out;
  out.l_index = description_length_index(
      total_sizes(graph),
      {partition.communities(Color::Red), partition.communities(Color::Green),
       partition.communities(Color::Blue)},
      static_cast<std::uint64_t>(graph.total_weight()));
  out.l_recover = description_length_recover(graph, partition);
  out.q = out.l_index + out.l_recover;
  return out;
}

// ---------------------------------------------------------------------------
// MdlState

namespace {

// The two other colors, in the order used for pair keys.
constexpr std::array<std::array<std::size_t, 2>, 3> kOthers = {{{1, 2}, {0, 2}, {0, 1}}};

CellKey make_cell(Color c, Label own, Label first, Label second) {
  switch (c) {
    case Color::Red: return {own, first, second};
    case Color::Green: return {first, own, second};
    default: return {first, second, own};
  }
}

}  // namespace

MdlState::MdlState(const TripartiteHypergraph& graph, const Partition& partition) : graph_(&graph) {
  partition.check_matches(graph);
  for (Color c : kColors) {
    const std::size_t ci = index(c);
    const std::size_t n = graph.num_nodes(c);
    const auto labels = partition.labels(c);
    labels_[ci].assign(labels.begin(), labels.end());
    comm_size_[ci].assign(n, 0);
    members_[ci].assign(n, 0);
    cells_[ci].assign(n, PairMap{});
    grow_[ci].assign(n, GrowTerm{});
    for (NodeId v = 0; v < n; ++v) {
      comm_size_[ci][labels_[ci][v]] += graph.node_size(c, v);
      ++members_[ci][labels_[ci][v]];
    }
    num_communities_[ci] = partition.communities(c);
    live_pos_[ci].assign(n, 0);
    for (Label l = 0; l < num_communities_[ci]; ++l) {
      live_pos_[ci][l] = live_[ci].size();
      live_[ci].push_back(l);
    }
    for (std::size_t l = n; l-- > num_communities_[ci];) free_labels_[ci].push_back(static_cast<Label>(l));
  }
  for (const auto& e : graph.edges()) {
    const CellKey key{labels_[0][e.red], labels_[1][e.green], labels_[2][e.blue]};
    const Weight old = connectivity_at(key);
    set_cell(key, old + e.weight);
  }
  l_recover_ = 0.0;
  for (Label a = 0; a < cells_[0].size(); ++a) {
    for (const auto& [pair, mass] : cells_[0][a]) {
      const auto capacity = static_cast<std::uint64_t>(comm_size_[0][a] * pair_capacity(Color::Red, pair));
      if (static_cast<std::uint64_t>(mass) > capacity) {
        throw std::logic_error("connectivity exceeds community capacity");
      }
      l_recover_ += log2_binomial(capacity, static_cast<std::uint64_t>(mass));
    }
  }
  l_index_ = index_length({num_communities_[0], num_communities_[1], num_communities_[2]});
}

double MdlState::index_length(std::array<std::uint64_t, 3> counts) const {
  return description_length_index(total_sizes(*graph_), counts,
                                   static_cast<std::uint64_t>(graph_->total_weight()));
}

Partition MdlState::partition() const {
  return Partition::from_raw(labels_);
}

Weight MdlState::pair_capacity(Color c, PairKey key) const {
  const auto& [o1, o2] = kOthers[index(c)];
  return comm_size_[o1][pair_first(key)] * comm_size_[o2][pair_second(key)];
}

MdlState::PairKey MdlState::incident_pair(Color c, const Hyperedge& e) const {
  const auto& [o1, o2] = kOthers[index(c)];
  return pair_key(labels_[o1][e.endpoint(kColors[o1])], labels_[o2][e.endpoint(kColors[o2])]);
}

Weight MdlState::connectivity_at(CellKey key) const {
  const auto& row = cells_[0][key.red];
  auto it = row.find(pair_key(key.green, key.blue));
  return it == row.end() ? 0 : it->second;
}

std::vector<std::pair<CellKey, Weight>> MdlState::connectivity() const {
  std::vector<std::pair<CellKey, Weight>> out;
  for (Label a = 0; a < cells_[0].size(); ++a) {
    for (const auto& [pair, mass] : cells_[0][a]) {
      out.push_back({CellKey{a, pair_first(pair), pair_second(pair)}, mass});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first.red, x.first.green, x.first.blue) <
           std::tie(y.first.red, y.first.green, y.first.blue);
  });
  return out;
}

void MdlState::set_cell(CellKey key, Weight new_value) {
  const std::array<Label, 3> own = {key.red, key.green, key.blue};
  for (Color c : kColors) {
    const std::size_t ci = index(c);
    const auto& [o1, o2] = kOthers[ci];
    const PairKey pair = pair_key(own[o1], own[o2]);
    if (new_value == 0) {
      cells_[ci][own[ci]].erase(pair);
      auto it = pair_members_[ci].find(pair);
      auto& members = it->second;
      auto pos = std::find_if(members.begin(), members.end(), [&](const auto& m) { return m.first == own[ci]; });
      *pos = members.back();
      members.pop_back();
      if (members.empty()) pair_members_[ci].erase(it);
    } else {
      cells_[ci][own[ci]][pair] = new_value;
      auto& members = pair_members_[ci][pair];
      auto pos = std::find_if(members.begin(), members.end(), [&](const auto& m) { return m.first == own[ci]; });
      if (pos == members.end()) {
        members.emplace_back(own[ci], new_value);
      } else {
        pos->second = new_value;
      }
    }
  }
}

MdlState::MoveContext MdlState::prepare_move(Color c, NodeId v) const {
  const std::size_t ci = index(c);
  if (v >= labels_[ci].size()) throw DomainError("node index out of range");
  MoveContext ctx;
  ctx.color = c;
  ctx.node = v;
  ctx.source = labels_[ci][v];
  ctx.node_size = graph_->node_size(c, v);
  ctx.source_empties = members_[ci][ctx.source] == 1;

  const auto edges = graph_->edges();
  for (std::uint32_t e : graph_->incident(c, v)) {
    ctx.incident.emplace_back(incident_pair(c, edges[e]), edges[e].weight);
  }
  std::sort(ctx.incident.begin(), ctx.incident.end());
  std::size_t w = 0;
  for (std::size_t r = 0; r < ctx.incident.size(); ++r) {
    if (w > 0 && ctx.incident[w - 1].first == ctx.incident[r].first) {
      ctx.incident[w - 1].second += ctx.incident[r].second;
    } else {
      ctx.incident[w++] = ctx.incident[r];
    }
  }
  ctx.incident.resize(w);

  const Weight source_size = comm_size_[ci][ctx.source];
  const Weight remaining = source_size - ctx.node_size;
  for (const auto& [pair, mass] : cells_[ci][ctx.source]) {
    auto it = std::lower_bound(ctx.incident.begin(), ctx.incident.end(), std::make_pair(pair, Weight{0}));
    const Weight moved = (it != ctx.incident.end() && it->first == pair) ? it->second : 0;
    const Weight capacity = pair_capacity(c, pair);
    ctx.removal += log2_binomial(static_cast<std::uint64_t>(remaining * capacity),
                                 static_cast<std::uint64_t>(mass - moved)) -
                   log2_binomial(static_cast<std::uint64_t>(source_size * capacity),
                                 static_cast<std::uint64_t>(mass));
  }
  return ctx;
}

double MdlState::delta_q(const MoveContext& ctx, Label target) const {
  const Color c = ctx.color;
  const std::size_t ci = index(c);
  if (target == ctx.source) return 0.0;
  const bool fresh = target == kFreshLabel;
  if (!fresh && !is_live(c, target)) {
    throw DomainError("unknown target label " + std::to_string(target));
  }
  if (fresh && ctx.source_empties) return 0.0;

  std::array<std::uint64_t, 3> counts = {num_communities_[0], num_communities_[1], num_communities_[2]};
  if (ctx.source_empties) --counts[ci];
  if (fresh) ++counts[ci];
  const double index_delta = counts[ci] == num_communities_[ci] ? 0.0 : index_length(counts) - l_index_;

  const Weight target_size = fresh ? 0 : comm_size_[ci][target];
  const Weight grown = target_size + ctx.node_size;
  double insertion = 0.0;
  if (!fresh) {
    const auto& row = cells_[ci][target];
    for (const auto& [pair, mass] : row) {
      auto it = std::lower_bound(ctx.incident.begin(), ctx.incident.end(), std::make_pair(pair, Weight{0}));
      const Weight moved = (it != ctx.incident.end() && it->first == pair) ? it->second : 0;
      const Weight capacity = pair_capacity(c, pair);
      insertion += log2_binomial(static_cast<std::uint64_t>(grown * capacity),
                                 static_cast<std::uint64_t>(mass + moved)) -
                   log2_binomial(static_cast<std::uint64_t>(target_size * capacity),
                                 static_cast<std::uint64_t>(mass));
    }
    for (const auto& [pair, moved] : ctx.incident) {
      if (row.contains(pair)) continue;
      insertion += log2_binomial(static_cast<std::uint64_t>(grown * pair_capacity(c, pair)),
                                 static_cast<std::uint64_t>(moved));
    }
  } else {
    for (const auto& [pair, moved] : ctx.incident) {
      insertion += log2_binomial(static_cast<std::uint64_t>(grown * pair_capacity(c, pair)),
                                 static_cast<std::uint64_t>(moved));
    }
  }
  return index_delta + ctx.removal + insertion;
}

double MdlState::delta_q(Color c, NodeId v, Label target) const {
  return delta_q(prepare_move(c, v), target);
}

double MdlState::apply_move(Color c, NodeId v, Label target) {
  const std::size_t ci = index(c);
  const MoveContext ctx = prepare_move(c, v);
  const double delta = delta_q(ctx, target);
  if (target == ctx.source || (target == kFreshLabel && ctx.source_empties)) return 0.0;

  const double index_before = l_index_;
  Label dest = target;
  if (target == kFreshLabel) {
    dest = free_labels_[ci].back();
    free_labels_[ci].pop_back();
    ++num_communities_[ci];
    live_pos_[ci][dest] = live_[ci].size();
    live_[ci].push_back(dest);
  }
  for (const auto& [pair, moved] : ctx.incident) {
    const CellKey from = make_cell(c, ctx.source, pair_first(pair), pair_second(pair));
    const CellKey to = make_cell(c, dest, pair_first(pair), pair_second(pair));
    const Weight from_mass = cells_[ci][ctx.source].at(pair);
    set_cell(from, from_mass - moved);
    const Weight to_mass = connectivity_at(to);
    set_cell(to, to_mass + moved);
  }

  comm_size_[ci][ctx.source] -= ctx.node_size;
  comm_size_[ci][dest] += ctx.node_size;
  --members_[ci][ctx.source];
  ++members_[ci][dest];
  if (members_[ci][ctx.source] == 0) {
    --num_communities_[ci];
    free_labels_[ci].push_back(ctx.source);
    const std::size_t pos = live_pos_[ci][ctx.source];
    live_[ci][pos] = live_[ci].back();
    live_pos_[ci][live_[ci][pos]] = pos;
    live_[ci].pop_back();
  }
  labels_[ci][v] = dest;

  // Rows whose cells or capacities just changed: the two communities involved
  // and every other-color community sharing a cell with either of them.
  invalidate_grow(c, ctx.source);
  invalidate_grow(c, dest);
  const auto& [o1, o2] = kOthers[ci];
  auto invalidate_pair = [&](PairKey pair) {
    invalidate_grow(kColors[o1], pair_first(pair));
    invalidate_grow(kColors[o2], pair_second(pair));
  };
  for (const auto& entry : ctx.incident) invalidate_pair(entry.first);
  for (const auto& entry : cells_[ci][ctx.source]) invalidate_pair(entry.first);
  for (const auto& entry : cells_[ci][dest]) invalidate_pair(entry.first);

  l_index_ = index_length({num_communities_[0], num_communities_[1], num_communities_[2]});
  l_recover_ += delta - (l_index_ - index_before);
  return delta;
}

std::vector<Label> MdlState::live_labels(Color c) const {
  std::vector<Label> out = live_[index(c)];
  std::sort(out.begin(), out.end());
  return out;
}

void MdlState::invalidate_grow(Color c, Label l) { grow_[index(c)][l].valid = false; }

double MdlState::grow_bits(Color c, Label t, Weight node_size) const {
  GrowTerm& term = grow_[index(c)][t];
  if (term.valid && term.node_size == node_size) return term.bits;
  const Weight size = comm_size_[index(c)][t];
  double bits = 0.0;
  for (const auto& [pair, mass] : cells_[index(c)][t]) {
    const Weight capacity = pair_capacity(c, pair);
    bits += log2_binomial(static_cast<std::uint64_t>((size + node_size) * capacity),
                          static_cast<std::uint64_t>(mass)) -
            log2_binomial(static_cast<std::uint64_t>(size * capacity), static_cast<std::uint64_t>(mass));
  }
  term = {node_size, bits, true};
  return bits;
}

void MdlState::score_moves(const MoveContext& ctx, bool all_live,
                           std::vector<std::pair<Label, double>>& out) const {
  const Color c = ctx.color;
  const std::size_t ci = index(c);
  out.clear();
  if (ctx.source_empties && num_communities_[ci] == 1) return;  // nowhere else to go

  double base = ctx.removal;
  if (ctx.source_empties) {
    std::array<std::uint64_t, 3> counts = {num_communities_[0], num_communities_[1], num_communities_[2]};
    --counts[ci];
    base += index_length(counts) - l_index_;
  }

  // Joining t splits into: t's own cells growing (grow_bits), the node's
  // cells landing on empty ground (fresh_bits), and a correction on pairs
  // where both are present.
  if (overlap_.size() < labels_[ci].size()) {
    overlap_.resize(labels_[ci].size());
    overlap_seen_.resize(labels_[ci].size());
  }
  overlap_labels_.clear();
  for (const auto& [pair, moved] : ctx.incident) {
    auto it = pair_members_[ci].find(pair);
    if (it == pair_members_[ci].end()) continue;
    const Weight capacity = pair_capacity(c, pair);
    for (const auto& [t, mass] : it->second) {
      if (t == ctx.source) continue;
      const auto n = static_cast<std::uint64_t>((comm_size_[ci][t] + ctx.node_size) * capacity);
      const double correction = log2_binomial(n, static_cast<std::uint64_t>(mass + moved)) -
                                log2_binomial(n, static_cast<std::uint64_t>(mass)) -
                                log2_binomial(n, static_cast<std::uint64_t>(moved));
      if (!overlap_seen_[t]) {
        overlap_seen_[t] = 1;
        overlap_[t] = 0.0;
        overlap_labels_.push_back(t);
      }
      overlap_[t] += correction;
    }
  }

  // The node's own term depends on the target only through its size.
  std::vector<std::pair<Weight, double>> fresh_memo;
  auto fresh_bits = [&](Weight target_size) {
    for (const auto& [size, bits] : fresh_memo) {
      if (size == target_size) return bits;
    }
    double bits = 0.0;
    for (const auto& [pair, moved] : ctx.incident) {
      bits += log2_binomial(static_cast<std::uint64_t>((target_size + ctx.node_size) * pair_capacity(c, pair)),
                            static_cast<std::uint64_t>(moved));
    }
    fresh_memo.emplace_back(target_size, bits);
    return bits;
  };

  auto score = [&](Label t) {
    double d = base + grow_bits(c, t, ctx.node_size) + fresh_bits(comm_size_[ci][t]);
    if (overlap_seen_[t]) d += overlap_[t];
    out.emplace_back(t, d);
  };
  if (all_live) {
    for (Label t : live_[ci]) {
      if (t != ctx.source) score(t);
    }
  } else {
    for (Label t : overlap_labels_) score(t);
  }
  for (Label t : overlap_labels_) overlap_seen_[t] = 0;
  std::sort(out.begin(), out.end());
}

std::vector<Label> MdlState::candidate_labels(Color c, NodeId v) const {
  const std::size_t ci = index(c);
  const auto edges = graph_->edges();
  std::vector<Label> out;
  PairKey last = ~PairKey{0};
  for (std::uint32_t e : graph_->incident(c, v)) {
    const PairKey pair = incident_pair(c, edges[e]);
    if (pair == last) continue;
    last = pair;
    auto it = pair_members_[ci].find(pair);
    if (it == pair_members_[ci].end()) continue;
    for (const auto& member : it->second) out.push_back(member.first);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tricomm
