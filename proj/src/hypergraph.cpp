#include "tricomm/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string_view>
#include <tuple>

namespace tricomm {

const char* color_name(Color c) {
  switch (c) {
    case Color::Red: return "red";
    case Color::Green: return "green";
    default: return "blue";
  }
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::vector<Hyperedge> merge_duplicates(std::vector<Hyperedge> edges) {
  std::sort(edges.begin(), edges.end(), [](const Hyperedge& a, const Hyperedge& b) {
    return std::tie(a.red, a.green, a.blue) < std::tie(b.red, b.green, b.blue);
  });
  std::vector<Hyperedge> merged;
  merged.reserve(edges.size());
  for (const auto& e : edges) {
    if (!merged.empty() && merged.back().red == e.red && merged.back().green == e.green &&
        merged.back().blue == e.blue) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }
  return merged;
}

}  // namespace

TripartiteHypergraph::TripartiteHypergraph(std::array<std::size_t, 3> counts,
                                           std::vector<Hyperedge> edges)
    : TripartiteHypergraph(
          std::array<std::vector<Weight>, 3>{std::vector<Weight>(counts[0], 1),
                                             std::vector<Weight>(counts[1], 1),
                                             std::vector<Weight>(counts[2], 1)},
          std::move(edges)) {}

TripartiteHypergraph::TripartiteHypergraph(std::array<std::vector<Weight>, 3> node_sizes,
                                           std::vector<Hyperedge> edges)
    : sizes_(std::move(node_sizes)) {
  for (Color c : kColors) {
    // community labels are packed into 21 bits per color in the state keys
    if (sizes_[index(c)].size() >= (std::size_t{1} << 21)) {
      throw DomainError(std::string("too many ") + color_name(c) + " nodes");
    }
    Weight total = 0;
    for (Weight s : sizes_[index(c)]) {
      if (s <= 0) throw DomainError("node sizes must be positive");
      total += s;
    }
    total_size_[index(c)] = total;
  }
  for (const auto& e : edges) {
    if (e.weight <= 0) throw DomainError("edge weights must be positive");
    for (Color c : kColors) {
      if (e.endpoint(c) >= sizes_[index(c)].size()) {
        throw DomainError(std::string(color_name(c)) + " index out of range");
      }
    }
  }
  edges_ = merge_duplicates(std::move(edges));
  build();
}

void TripartiteHypergraph::build() {
  total_weight_ = 0;
  for (const auto& e : edges_) total_weight_ += e.weight;
  if (edges_.size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw DomainError("too many hyperedges");
  }
  for (Color c : kColors) {
    const std::size_t n = sizes_[index(c)].size();
    auto& off = offsets_[index(c)];
    auto& inc = incidence_[index(c)];
    off.assign(n + 1, 0);
    for (const auto& e : edges_) ++off[e.endpoint(c) + 1];
    for (std::size_t v = 0; v < n; ++v) off[v + 1] += off[v];
    inc.resize(edges_.size());
    std::vector<std::uint32_t> cursor(off.begin(), off.end() - 1);
    for (std::uint32_t e = 0; e < edges_.size(); ++e) {
      inc[cursor[edges_[e].endpoint(c)]++] = e;
    }
  }
}

std::span<const std::uint32_t> TripartiteHypergraph::incident(Color c, NodeId v) const {
  const auto& off = offsets_[index(c)];
  return std::span<const std::uint32_t>(incidence_[index(c)]).subspan(off[v], off[v + 1] - off[v]);
}

bool TripartiteHypergraph::is_simple() const {
  for (const auto& sizes : sizes_) {
    if (std::any_of(sizes.begin(), sizes.end(), [](Weight s) { return s != 1; })) return false;
  }
  return std::all_of(edges_.begin(), edges_.end(), [](const Hyperedge& e) { return e.weight == 1; });
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

std::uint64_t parse_uint(std::string_view field, std::size_t line_no, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line_no, std::string("invalid ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

TripartiteHypergraph load_hypergraph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::array<std::size_t, 3> counts{};
  std::vector<Hyperedge> edges;

  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (!have_header) {
      if (fields.size() != 3) {
        throw ParseError(line_no, "missing header 'n_red n_green n_blue'");
      }
      for (std::size_t c = 0; c < 3; ++c) counts[c] = parse_uint(fields[c], line_no, "node count");
      have_header = true;
      continue;
    }
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError(line_no, "expected 'i j k' or 'i j k w'");
    }
    std::array<std::uint64_t, 3> idx{};
    for (std::size_t c = 0; c < 3; ++c) {
      idx[c] = parse_uint(fields[c], line_no, "node index");
      if (idx[c] >= counts[c]) {
        throw ParseError(line_no, std::string(color_name(kColors[c])) + " index out of range");
      }
    }
    Weight w = 1;
    if (fields.size() == 4) {
      if (!fields[3].empty() && fields[3].front() == '-') {
        throw ParseError(line_no, "nonpositive weight");
      }
      w = static_cast<Weight>(parse_uint(fields[3], line_no, "weight"));
      if (w <= 0) throw ParseError(line_no, "nonpositive weight");
    }
    edges.push_back({static_cast<NodeId>(idx[0]), static_cast<NodeId>(idx[1]),
                     static_cast<NodeId>(idx[2]), w});
  }
  if (!have_header) throw ParseError(line_no, "missing header 'n_red n_green n_blue'");
  return TripartiteHypergraph(counts, std::move(edges));
}

TripartiteHypergraph load_hypergraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_hypergraph(in);
}

void save_hypergraph(const TripartiteHypergraph& graph, std::ostream& out) {
  out << graph.num_nodes(Color::Red) << ' ' << graph.num_nodes(Color::Green) << ' '
      << graph.num_nodes(Color::Blue) << '\n';
  for (const auto& e : graph.edges()) {
    out << e.red << ' ' << e.green << ' ' << e.blue;
    if (e.weight != 1) out << ' ' << e.weight;
    out << '\n';
  }
}

}  // namespace tricomm
