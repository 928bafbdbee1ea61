#pragma once

#include <array>
#include <span>
#include <vector>

#include "tricomm/hypergraph.hpp"
#include "tricomm/partition.hpp"

namespace tricomm {

/// Contingency counts between two labelings of the same nodes: entry (a, b)
/// counts nodes labeled a in x and b in y.
struct ConfusionMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> counts;  // row-major rows x cols
  std::vector<std::size_t> row_totals;
  std::vector<std::size_t> col_totals;
  std::size_t total = 0;

  std::size_t at(std::size_t a, std::size_t b) const { return counts[a * cols + b]; }
};

/// Labels need not be contiguous; rows and columns span 0..max label.
ConfusionMatrix confusion(std::span<const Label> x, std::span<const Label> y);

/// Normalized mutual information in the form of Danon et al.,
///   -2 sum_ab N_ab log(N_ab N / (N_a N_b)) / (sum_a N_a log(N_a / N) + sum_b N_b log(N_b / N)),
/// clamped to [0, 1]. Two single-community labelings give 1.
double nmi(std::span<const Label> x, std::span<const Label> y);

struct ColorScores {
  double red = 0.0;
  double green = 0.0;
  double blue = 0.0;

  double at(Color c) const { return c == Color::Red ? red : c == Color::Green ? green : blue; }
};

ColorScores nmi_per_color(const Partition& truth, const Partition& pred);

/// NMI over all nodes of all colors, with community ids kept disjoint per color.
double nmi_all_colors(const Partition& truth, const Partition& pred);

}  // namespace tricomm
