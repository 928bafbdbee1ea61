#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tricomm/hypergraph.hpp"
#include "tricomm/mdl.hpp"
#include "tricomm/partition.hpp"

namespace tricomm {

inline constexpr std::size_t kMaxEnumerableItems = 8;

/// Bell number B(n) for n <= 25.
std::uint64_t bell_number(std::size_t n);

/// Every set partition of n items (1 <= n <= 8) as a restricted growth
/// string, in lexicographic order.
std::vector<std::vector<Label>> enumerate_set_partitions(std::size_t n);

/// Calls visit on each restricted growth string of length n without
/// materializing the list.
void for_each_set_partition(std::size_t n, const std::function<void(const std::vector<Label>&)>& visit);

struct ExactResult {
  Partition partition;
  double q = 0.0;
  std::uint64_t combinations = 0;
};

/// Global minimum of Q over all per-color partition combinations, found by
/// scoring each from scratch. Ties keep the first in enumeration order
/// (red outermost, blue innermost). Refuses when the product of Bell numbers
/// exceeds limit.
ExactResult exact_min_q(const TripartiteHypergraph& graph, std::uint64_t limit = 10'000'000);

}  // namespace tricomm
