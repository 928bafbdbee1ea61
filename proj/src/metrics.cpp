#include "tricomm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tricomm {

ConfusionMatrix confusion(std::span<const Label> x, std::span<const Label> y) {
  if (x.size() != y.size()) {
    throw DomainError("confusion: length mismatch (" + std::to_string(x.size()) + " vs " +
                      std::to_string(y.size()) + ")");
  }
  ConfusionMatrix cm;
  cm.total = x.size();
  if (x.empty()) return cm;
  cm.rows = static_cast<std::size_t>(*std::max_element(x.begin(), x.end())) + 1;
  cm.cols = static_cast<std::size_t>(*std::max_element(y.begin(), y.end())) + 1;
  cm.counts.assign(cm.rows * cm.cols, 0);
  cm.row_totals.assign(cm.rows, 0);
  cm.col_totals.assign(cm.cols, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    ++cm.counts[x[i] * cm.cols + y[i]];
    ++cm.row_totals[x[i]];
    ++cm.col_totals[y[i]];
  }
  return cm;
}

double nmi(std::span<const Label> x, std::span<const Label> y) {
  if (x.size() != y.size()) throw DomainError("nmi: length mismatch");
  if (x.empty()) throw DomainError("nmi: empty input");
  const ConfusionMatrix cm = confusion(x, y);
  const double n = static_cast<double>(cm.total);

  // Same grouping up to relabeling: the formula gives 1 only up to rounding.
  std::size_t nonzero = 0;
  std::size_t used_rows = 0;
  std::size_t used_cols = 0;
  for (std::size_t v : cm.counts) nonzero += v > 0;
  for (std::size_t v : cm.row_totals) used_rows += v > 0;
  for (std::size_t v : cm.col_totals) used_cols += v > 0;
  if (nonzero == used_rows && nonzero == used_cols) return 1.0;

  double numerator = 0.0;
  for (std::size_t a = 0; a < cm.rows; ++a) {
    for (std::size_t b = 0; b < cm.cols; ++b) {
      const double nab = static_cast<double>(cm.at(a, b));
      if (nab == 0.0) continue;
      numerator += nab * std::log(nab * n / (static_cast<double>(cm.row_totals[a]) *
                                             static_cast<double>(cm.col_totals[b])));
    }
  }
  numerator *= -2.0;

  double denominator = 0.0;
  for (std::size_t na : cm.row_totals) {
    if (na > 0) denominator += static_cast<double>(na) * std::log(static_cast<double>(na) / n);
  }
  for (std::size_t nb : cm.col_totals) {
    if (nb > 0) denominator += static_cast<double>(nb) * std::log(static_cast<double>(nb) / n);
  }
  if (denominator == 0.0) return 1.0;
  return std::clamp(numerator / denominator, 0.0, 1.0);
}

ColorScores nmi_per_color(const Partition& truth, const Partition& pred) {
  for (Color c : kColors) {
    if (truth.size(c) != pred.size(c)) {
      throw DomainError(std::string("nmi: ") + color_name(c) + " node counts differ");
    }
  }
  return {nmi(truth.labels(Color::Red), pred.labels(Color::Red)),
          nmi(truth.labels(Color::Green), pred.labels(Color::Green)),
          nmi(truth.labels(Color::Blue), pred.labels(Color::Blue))};
}

namespace {

std::vector<Label> concatenate(const Partition& p) {
  std::vector<Label> out;
  Label offset = 0;
  for (Color c : kColors) {
    for (Label l : p.labels(c)) out.push_back(l + offset);
    offset += static_cast<Label>(p.communities(c));
  }
  return out;
}

}  // namespace

double nmi_all_colors(const Partition& truth, const Partition& pred) {
  for (Color c : kColors) {
    if (truth.size(c) != pred.size(c)) {
      throw DomainError(std::string("nmi: ") + color_name(c) + " node counts differ");
    }
  }
  return nmi(concatenate(truth), concatenate(pred));
}

}  // namespace tricomm
