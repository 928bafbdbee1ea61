#include "tricomm/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

namespace tricomm {

std::uint64_t cell_seed(std::uint64_t seed, std::size_t p_index, std::size_t run) {
  std::uint64_t z = (static_cast<std::uint64_t>(p_index) << 32) | static_cast<std::uint64_t>(run);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return seed ^ (z ^ (z >> 31));
}

GeneratorConfig sweep_generator(const SweepConfig& config, std::size_t p_index, std::size_t run) {
  const double p_dense = config.p_dense.at(p_index);
  const double p_sparse = config.p_sparse.value_or(default_p_sparse(p_dense));
  const std::uint64_t seed = cell_seed(config.seed, p_index, run);
  if (config.preset == Preset::OneToOne) {
    return preset_one_to_one(config.communities[0], config.nodes_per_comm, p_dense, p_sparse, seed);
  }
  std::size_t triples = config.triples;
  if (triples == 0) triples = 2 * *std::max_element(config.communities.begin(), config.communities.end());
  return preset_many_to_many(config.communities, triples, config.nodes_per_comm, p_dense, p_sparse, seed);
}

SweepRow run_sweep_cell(const SweepConfig& config, std::size_t p_index, std::size_t run) {
  const auto start = std::chrono::steady_clock::now();
  const GeneratedInstance instance = generate(sweep_generator(config, p_index, run));
  OptimizerConfig opt = config.optimizer;
  opt.seed = cell_seed(config.seed, p_index, run);
  const DetectionResult result = detect(instance.graph, opt);

  SweepRow row;
  row.p_dense = config.p_dense[p_index];
  row.run = run;
  row.nmi = nmi_per_color(instance.truth, result.partition);
  row.communities = result.partition.communities();
  row.q = result.q;
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config, const std::function<void(const SweepRow&)>& on_row) {
  if (config.runs == 0) throw DomainError("sweep: runs must be positive");
  if (config.p_dense.empty()) throw DomainError("sweep: p_dense list is empty");
  config.optimizer.validate();
  // Fail early on bad generator arguments rather than inside a worker.
  sweep_generator(config, 0, 0).validate();

  const std::size_t cells = config.p_dense.size() * config.runs;
  std::vector<std::optional<SweepRow>> done(cells);
  std::vector<SweepRow> rows;
  rows.reserve(cells);

  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, cells));
  if (jobs == 1) {
    for (std::size_t cell = 0; cell < cells; ++cell) {
      rows.push_back(run_sweep_cell(config, cell / config.runs, cell % config.runs));
      if (on_row) on_row(rows.back());
    }
    return rows;
  }

  std::mutex mutex;
  std::condition_variable ready;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      std::size_t cell;
      {
        std::lock_guard lock(mutex);
        if (next >= cells || failure) return;
        cell = next++;
      }
      try {
        SweepRow row = run_sweep_cell(config, cell / config.runs, cell % config.runs);
        std::lock_guard lock(mutex);
        done[cell] = std::move(row);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
      }
      ready.notify_all();
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);

  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return done[cell].has_value() || failure; });
    if (failure) break;
    rows.push_back(*done[cell]);
    lock.unlock();
    if (on_row) on_row(rows.back());
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

SweepCsvWriter::SweepCsvWriter(std::ostream& out, std::size_t runs_per_group)
    : out_(out), runs_per_group_(runs_per_group) {
  out_ << "p_dense,run,nmi_red,nmi_green,nmi_blue,q,seconds\n";
  out_.flush();
}

void SweepCsvWriter::row(const SweepRow& row) {
  out_ << fixed6(row.p_dense) << ',' << row.run << ',' << fixed6(row.nmi.red) << ','
       << fixed6(row.nmi.green) << ',' << fixed6(row.nmi.blue) << ',' << fixed6(row.q) << ','
       << fixed6(row.seconds) << '\n';
  group_.push_back(row);
  if (group_.size() == runs_per_group_) {
    const double n = static_cast<double>(group_.size());
    std::array<double, 5> mean{};
    std::array<double, 5> sq{};
    for (const auto& r : group_) {
      const std::array<double, 5> v = {r.nmi.red, r.nmi.green, r.nmi.blue, r.q, r.seconds};
      for (std::size_t i = 0; i < 5; ++i) mean[i] += v[i] / n;
    }
    for (const auto& r : group_) {
      const std::array<double, 5> v = {r.nmi.red, r.nmi.green, r.nmi.blue, r.q, r.seconds};
      for (std::size_t i = 0; i < 5; ++i) sq[i] += (v[i] - mean[i]) * (v[i] - mean[i]);
    }
    out_ << fixed6(row.p_dense) << ",mean";
    for (double m : mean) out_ << ',' << fixed6(m);
    out_ << '\n' << fixed6(row.p_dense) << ",std";
    // sample standard deviation; 0 for a single run
    for (double s : sq) out_ << ',' << fixed6(group_.size() > 1 ? std::sqrt(s / (n - 1.0)) : 0.0);
    out_ << '\n';
    group_.clear();
  }
  out_.flush();
}

}  // namespace tricomm
