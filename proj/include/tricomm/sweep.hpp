#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tricomm/metrics.hpp"
#include "tricomm/optimizer.hpp"
#include "tricomm/synth.hpp"

namespace tricomm {

enum class Preset { OneToOne, ManyToMany };

/// p_dense sweep over planted instances: for every p_dense value and run,
/// generate, detect, and score per-color NMI against the planted truth.
struct SweepConfig {
  Preset preset = Preset::OneToOne;
  std::array<std::size_t, 3> communities{3, 3, 3};
  std::size_t triples = 0;  // many-to-many only; 0 means 2 * largest count
  std::size_t nodes_per_comm = 10;
  std::vector<double> p_dense;
  std::optional<double> p_sparse;  // default_p_sparse(p_dense) when empty
  std::size_t runs = 20;
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;
  std::size_t jobs = 1;
};

struct SweepRow {
  double p_dense = 0.0;
  std::size_t run = 0;
  ColorScores nmi;
  std::array<std::size_t, 3> communities{0, 0, 0};
  double q = 0.0;
  double seconds = 0.0;
};

/// Seed of sweep cell (p_dense index, run): seed XOR a splitmix64 mix of
/// (p_index << 32 | run).
std::uint64_t cell_seed(std::uint64_t seed, std::size_t p_index, std::size_t run);

GeneratorConfig sweep_generator(const SweepConfig& config, std::size_t p_index, std::size_t run);

/// Runs a single cell.
SweepRow run_sweep_cell(const SweepConfig& config, std::size_t p_index, std::size_t run);

/// Runs every cell, up to config.jobs at a time. on_row receives rows in
/// (p_dense index, run) order regardless of completion order.
std::vector<SweepRow> run_sweep(const SweepConfig& config,
                                const std::function<void(const SweepRow&)>& on_row = {});

/// CSV writer: header, one line per run, then "mean" and "std" lines once a
/// p_dense group holds runs_per_group rows. Reals carry 6 fractional digits.
class SweepCsvWriter {
 public:
  SweepCsvWriter(std::ostream& out, std::size_t runs_per_group);
  void row(const SweepRow& row);

 private:
  std::ostream& out_;
  std::size_t runs_per_group_;
  std::vector<SweepRow> group_;
};

}  // namespace tricomm
