#include "tricomm/oracle.hpp"

#include <algorithm>
#include <string>

namespace tricomm {

std::uint64_t bell_number(std::size_t n) {
  if (n > 25) throw DomainError("bell_number: n too large");
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

void for_each_set_partition(std::size_t n, const std::function<void(const std::vector<Label>&)>& visit) {
  if (n < 1 || n > kMaxEnumerableItems) {
    throw DomainError("enumerate_set_partitions: n=" + std::to_string(n) + " outside 1.." +
                      std::to_string(kMaxEnumerableItems));
  }
  // rgs[i] <= 1 + max(rgs[0..i-1]); prefix_max[i] = max(rgs[0..i]).
  std::vector<Label> rgs(n, 0);
  std::vector<Label> prefix_max(n, 0);
  while (true) {
    visit(rgs);
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) return;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::vector<std::vector<Label>> enumerate_set_partitions(std::size_t n) {
  std::vector<std::vector<Label>> out;
  for_each_set_partition(n, [&](const std::vector<Label>& rgs) { out.push_back(rgs); });
  return out;
}

ExactResult exact_min_q(const TripartiteHypergraph& graph, std::uint64_t limit) {
  std::uint64_t product = 1;
  for (Color c : kColors) {
    const std::size_t n = graph.num_nodes(c);
    if (n < 1 || n > kMaxEnumerableItems) {
      throw DomainError(std::string("oracle: ") + color_name(c) + " node count " + std::to_string(n) +
                        " outside 1.." + std::to_string(kMaxEnumerableItems));
    }
    product *= bell_number(n);
  }
  if (product > limit) {
    throw DomainError("oracle: " + std::to_string(product) + " partition combinations exceed the limit of " +
                      std::to_string(limit));
  }

  const auto reds = enumerate_set_partitions(graph.num_nodes(Color::Red));
  const auto greens = enumerate_set_partitions(graph.num_nodes(Color::Green));
  const auto blues = enumerate_set_partitions(graph.num_nodes(Color::Blue));

  ExactResult best;
  bool have = false;
  for (const auto& r : reds) {
    for (const auto& g : greens) {
      for (const auto& b : blues) {
        Partition candidate({r, g, b});
        const double q = quality(graph, candidate).q;
        ++best.combinations;
        if (!have || q < best.q) {
          best.q = q;
          best.partition = std::move(candidate);
          have = true;
        }
      }
    }
  }
  return best;
}

}  // namespace tricomm
