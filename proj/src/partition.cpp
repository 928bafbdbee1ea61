#include "tricomm/partition.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "json.hpp"

namespace tricomm {

std::vector<Label> canonicalize(std::span<const Label> labels) {
  std::unordered_map<Label, Label> renumber;
  std::vector<Label> out;
  out.reserve(labels.size());
  for (Label l : labels) {
    auto [it, inserted] = renumber.try_emplace(l, static_cast<Label>(renumber.size()));
    out.push_back(it->second);
  }
  return out;
}

std::size_t count_communities(std::span<const Label> labels) {
  if (labels.empty()) return 0;
  return static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
}

namespace {

void check_contiguous(std::span<const Label> labels, Color c) {
  const std::size_t count = count_communities(labels);
  std::vector<bool> seen(count, false);
  for (Label l : labels) seen[l] = true;
  for (std::size_t l = 0; l < count; ++l) {
    if (!seen[l]) {
      throw DomainError(std::string(color_name(c)) + " labels not contiguous (label " +
                        std::to_string(l) + " missing)");
    }
  }
}

}  // namespace

Partition::Partition(std::array<std::vector<Label>, 3> labels) : labels_(std::move(labels)) {
  for (Color c : kColors) {
    check_contiguous(labels_[index(c)], c);
    counts_[index(c)] = count_communities(labels_[index(c)]);
  }
}

Partition Partition::singletons(std::array<std::size_t, 3> counts) {
  std::array<std::vector<Label>, 3> labels;
  for (std::size_t c = 0; c < 3; ++c) {
    labels[c].resize(counts[c]);
    for (std::size_t v = 0; v < counts[c]; ++v) labels[c][v] = static_cast<Label>(v);
  }
  return Partition(std::move(labels));
}

Partition Partition::all_one(std::array<std::size_t, 3> counts) {
  return Partition({std::vector<Label>(counts[0], 0), std::vector<Label>(counts[1], 0),
                    std::vector<Label>(counts[2], 0)});
}

Partition Partition::from_raw(std::array<std::vector<Label>, 3> labels) {
  for (auto& l : labels) l = canonicalize(l);
  return Partition(std::move(labels));
}

void Partition::check_matches(const TripartiteHypergraph& graph) const {
  for (Color c : kColors) {
    if (size(c) != graph.num_nodes(c)) {
      throw DomainError(std::string(color_name(c)) + " label count " + std::to_string(size(c)) +
                        " does not match node count " + std::to_string(graph.num_nodes(c)));
    }
  }
}

void save_partition(const Partition& partition, std::ostream& out) {
  nlohmann::json doc;
  for (Color c : kColors) {
    auto labels = partition.labels(c);
    doc[color_name(c)] = std::vector<Label>(labels.begin(), labels.end());
  }
  out << doc.dump() << '\n';
}

void save_partition_file(const Partition& partition, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  save_partition(partition, out);
  if (!out) throw std::runtime_error("failed writing " + path);
}

Partition load_partition(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("invalid partition JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError(0, "partition JSON must be an object");
  std::array<std::vector<Label>, 3> labels;
  for (Color c : kColors) {
    const char* key = color_name(c);
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw ParseError(0, std::string("partition JSON lacks array '") + key + "'");
    }
    for (const auto& v : doc[key]) {
      if (!v.is_number_unsigned()) {
        throw ParseError(0, std::string("'") + key + "' must hold nonnegative integers");
      }
      labels[index(c)].push_back(v.get<Label>());
    }
  }
  return Partition(std::move(labels));
}

Partition load_partition(std::istream& in, const TripartiteHypergraph& graph) {
  Partition p = load_partition(in);
  p.check_matches(graph);
  return p;
}

Partition load_partition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_partition(in);
}

}  // namespace tricomm
