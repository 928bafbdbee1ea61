// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: tricomm_acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "tricomm/mdl.hpp"
#include "tricomm/metrics.hpp"
#include "tricomm/optimizer.hpp"
#include "tricomm/oracle.hpp"
#include "tricomm/synth.hpp"

#ifndef TRICOMM_CLI_PATH
#error "TRICOMM_CLI_PATH must point at the command-line binary"
#endif

namespace {

using namespace tricomm;
using testing::close;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Golden values on the 2+2+2 two-edge hypergraph.
Outcome golden_values() {
  const auto g = testing::two_edge_graph();
  const double log3 = std::log2(3.0);
  const double q_single = quality(g, Partition::singletons({2, 2, 2})).q;
  const double q_one = quality(g, Partition::all_one({2, 2, 2})).q;
  MdlState state(g, Partition::singletons({2, 2, 2}));
  const double merge = state.delta_q(Color::Red, 1, 0);
  const bool pass = std::abs(q_single - (6 + 8 * log3)) <= 1e-9 &&
                    std::abs(q_one - (log3 + std::log2(28.0))) <= 1e-9 && std::abs(merge + 4 * log3) <= 1e-9;
  return {pass, fmt("Q(singletons)=%.9f Q(all-one)=%.9f merge delta=%.9f", q_single, q_one, merge)};
}

// 2. Cached Q after every applied move equals a from-scratch evaluation.
Outcome incremental_vs_scratch() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  while (trials < 10'000) {
    const std::array<std::size_t, 3> n = {1 + rng() % 30, 1 + rng() % 30, 1 + rng() % 30};
    const std::size_t cube = n[0] * n[1] * n[2];
    const auto g = testing::random_hypergraph_m(rng, n, std::min<std::size_t>(cube, rng() % 201));
    MdlState state(g, testing::random_partition(rng, n, {1 + rng() % 8, 1 + rng() % 8, 1 + rng() % 8}));
    for (int move = 0; move < 50; ++move, ++trials) {
      const Color c = kColors[rng() % 3];
      const NodeId v = static_cast<NodeId>(rng() % n[index(c)]);
      const auto live = state.live_labels(c);
      const Label target = rng() % 6 == 0 ? kFreshLabel : live[rng() % live.size()];
      state.apply_move(c, v, target);
      const double scratch = quality(g, state.partition()).q;
      const double rel = std::abs(state.q() - scratch) / std::max(1.0, std::abs(scratch));
      worst = std::max(worst, rel);
      if (rel > 1e-9) ++failures;
    }
  }
  const double elapsed = seconds_since(start);
  return {failures == 0 && elapsed < 60.0,
          fmt("%zu trials, %zu mismatches, worst relative error %.2e, %.1f s", trials, failures, worst, elapsed)};
}

// 3. Coarsening and projection preserve Q.
Outcome coarsening_preserves_q() {
  std::mt19937_64 rng(777);
  std::size_t failures = 0;
  double worst = 0.0;
  const int instances = 1000;
  for (int trial = 0; trial < instances; ++trial) {
    const std::array<std::size_t, 3> n = {1 + rng() % 20, 1 + rng() % 20, 1 + rng() % 20};
    const auto g = testing::random_hypergraph_m(rng, n, rng() % 301);
    const auto p = testing::random_partition(rng, n, {1 + rng() % 8, 1 + rng() % 8, 1 + rng() % 8});
    const auto coarse = coarsen(g, p);
    const double original = quality(g, p).q;
    const double reduced = quality(coarse.reduced, Partition::singletons(coarse.reduced.num_nodes())).q;
    const auto rp = testing::random_partition(rng, coarse.reduced.num_nodes(), {3, 3, 3});
    const double projected = quality(g, project_labels(coarse.mapping, rp)).q;
    const double on_reduced = quality(coarse.reduced, rp).q;
    const double e1 = std::abs(original - reduced) / std::max(1.0, std::abs(original));
    const double e2 = std::abs(projected - on_reduced) / std::max(1.0, std::abs(on_reduced));
    worst = std::max({worst, e1, e2});
    if (e1 > 1e-9 || e2 > 1e-9) ++failures;
  }
  return {failures == 0, fmt("%d instances, %zu violations, worst relative error %.2e", instances, failures, worst)};
}

// 4. detect never beats the exact optimum and usually reaches it.
Outcome oracle_consistency() {
  const auto start = Clock::now();
  std::mt19937_64 rng(4242);
  const int instances = 60;
  int below = 0;
  int optimal = 0;
  for (int trial = 0; trial < instances; ++trial) {
    const std::array<std::size_t, 3> n = {2 + rng() % 3, 2 + rng() % 3, 2 + rng() % 3};
    const auto g = testing::random_hypergraph(rng, n, 0.3);
    OptimizerConfig config;
    config.seed = static_cast<std::uint64_t>(trial);
    config.restarts = 5;
    const auto found = detect(g, config);
    const auto exact = exact_min_q(g);
    if (found.q < exact.q - 1e-9) ++below;
    if (found.q <= exact.q + 1e-9) ++optimal;
  }
  const double elapsed = seconds_since(start);
  const bool pass = below == 0 && optimal >= 0.8 * instances && elapsed < 300.0;
  return {pass, fmt("%d instances, %d below the optimum, %d optimal (%.0f%%), %.1f s", instances, below, optimal,
                    100.0 * optimal / instances, elapsed)};
}

struct Recovery {
  std::vector<ColorScores> scores;
  std::vector<std::array<std::size_t, 3>> communities;
  double mean_all() const {
    double total = 0.0;
    for (const auto& s : scores) total += s.red + s.green + s.blue;
    return total / (3.0 * static_cast<double>(scores.size()));
  }
  double mean(Color c) const {
    double total = 0.0;
    for (const auto& s : scores) total += s.at(c);
    return total / static_cast<double>(scores.size());
  }
};

Recovery recover(const std::function<GeneratorConfig(std::uint64_t)>& make, int runs) {
  Recovery out;
  for (int run = 0; run < runs; ++run) {
    const auto seed = static_cast<std::uint64_t>(run);
    const auto instance = generate(make(seed));
    OptimizerConfig config;
    config.seed = seed;
    const auto result = detect(instance.graph, config);
    out.scores.push_back(nmi_per_color(instance.truth, result.partition));
    out.communities.push_back(result.partition.communities());
  }
  return out;
}

// 5. One-to-one planted recovery and degradation at low density.
Outcome one_to_one_recovery() {
  const auto start = Clock::now();
  const auto at = [](double p_dense) {
    return recover([p_dense](std::uint64_t seed) { return preset_one_to_one(3, 10, p_dense, 0.0005, seed); }, 20);
  };
  const auto dense = at(0.5);
  int exact = 0;
  for (std::size_t r = 0; r < dense.scores.size(); ++r) {
    const auto& s = dense.scores[r];
    if (s.red == 1.0 && s.green == 1.0 && s.blue == 1.0 &&
        dense.communities[r] == std::array<std::size_t, 3>{3, 3, 3}) {
      ++exact;
    }
  }
  const auto sparse = at(0.02);
  const double elapsed = seconds_since(start);
  const bool pass = exact >= 18 && sparse.mean_all() < dense.mean_all() && elapsed < 120.0;
  return {pass, fmt("p_dense=0.5: %d/20 exact with (3,3,3); mean NMI %.4f at 0.5 vs %.4f at 0.02; %.1f s", exact,
                    dense.mean_all(), sparse.mean_all(), elapsed)};
}

// 6. Many-to-many planted recovery.
Outcome many_to_many_recovery() {
  const auto start = Clock::now();
  const auto rec = recover(
      [](std::uint64_t seed) { return preset_many_to_many({3, 3, 3}, 6, 10, 0.5, 0.0005, seed); }, 20);
  const double red = rec.mean(Color::Red);
  const double green = rec.mean(Color::Green);
  const double blue = rec.mean(Color::Blue);
  const double elapsed = seconds_since(start);
  const bool pass = std::min({red, green, blue}) >= 0.95 && elapsed < 120.0;
  return {pass, fmt("mean NMI red %.4f green %.4f blue %.4f; %.1f s", red, green, blue, elapsed)};
}

// 7. Runtime scaling over planted one-to-one instances of fixed density.
Outcome scaling() {
  const std::vector<std::size_t> nodes_per_comm = {9, 19, 41};  // m near 1e3, 1e4, 1e5
  std::vector<double> log_m;
  std::vector<double> log_t;
  std::string detail;
  double largest = 0.0;
  for (std::size_t npc : nodes_per_comm) {
    const auto instance = generate(preset_one_to_one(3, npc, 0.5, 0.0005, 1));
    std::vector<double> times;
    for (int rep = 0; rep < 3; ++rep) {
      OptimizerConfig config;
      config.seed = 1;
      const auto start = Clock::now();
      detect(instance.graph, config);
      times.push_back(seconds_since(start));
    }
    std::sort(times.begin(), times.end());
    const double median = times[1];
    largest = median;
    log_m.push_back(std::log(static_cast<double>(instance.graph.num_edges())));
    log_t.push_back(std::log(median));
    detail += fmt("m=%zu %.3fs; ", instance.graph.num_edges(), median);
  }
  const double mx = std::accumulate(log_m.begin(), log_m.end(), 0.0) / 3.0;
  const double my = std::accumulate(log_t.begin(), log_t.end(), 0.0) / 3.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sxy += (log_m[i] - mx) * (log_t[i] - my);
    sxx += (log_m[i] - mx) * (log_m[i] - mx);
  }
  const double slope = sxy / sxx;
  return {slope < 1.5 && largest < 60.0, detail + fmt("log-log slope %.3f", slope)};
}

// 8. NMI properties on randomized label pairs.
Outcome metric_properties() {
  std::mt19937_64 rng(88);
  int failures = 0;
  const int cases = 1000;
  auto labels = [&](std::size_t n, Label k) {
    std::vector<Label> out(n);
    for (auto& l : out) l = static_cast<Label>(rng() % k);
    return out;
  };
  auto permute = [&](const std::vector<Label>& x) {
    std::vector<Label> sigma(*std::max_element(x.begin(), x.end()) + 1);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::vector<Label> out;
    for (Label l : x) out.push_back(sigma[l]);
    return out;
  };
  for (int trial = 0; trial < cases; ++trial) {
    const std::size_t n = 2 + rng() % 80;
    const auto x = labels(n, static_cast<Label>(2 + rng() % 7));
    const auto y = labels(n, static_cast<Label>(1 + rng() % 7));
    const double v = nmi(x, y);
    bool ok = v >= 0.0 && v <= 1.0;
    ok = ok && std::abs(v - nmi(y, x)) <= 1e-12;
    ok = ok && std::abs(v - nmi(permute(x), permute(y))) <= 1e-12;
    ok = ok && nmi(x, x) == 1.0 && nmi(x, permute(x)) == 1.0;
    // crossing split: every block of x halved evenly by a 2-way split that
    // carries no information about x
    std::vector<Label> xx;
    std::vector<Label> split;
    for (Label l : x) {
      xx.insert(xx.end(), {l, l});
      split.insert(split.end(), {0, 1});
    }
    ok = ok && std::abs(nmi(xx, split)) <= 1e-12;
    if (!ok) ++failures;
  }
  return {failures == 0, fmt("%d cases, %d failures", cases, failures)};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string drop_last_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string out;
  for (std::string line; std::getline(in, line);) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

int run(const std::string& command) { return std::system((command + " > /dev/null 2>&1").c_str()); }

// 9. Byte-identical CLI outputs across repeated executions.
Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / fmt("tricomm_acceptance_%d", static_cast<int>(std::random_device{}() % 1000000));
  fs::create_directories(dir);
  const std::string cli = TRICOMM_CLI_PATH;
  const std::string graph = (dir / "graph.txt").string();
  bool ok = run(cli + " generate --preset many2many --communities 3 --triples 6 --nodes-per-comm 8 --p-dense 0.4 "
                      "--p-sparse 0.002 --seed 5 --out " + graph) == 0;
  std::vector<std::string> partitions;
  std::vector<std::string> reports;
  std::vector<std::string> sweeps;
  for (int rep = 0; rep < 2; ++rep) {
    const fs::path part = dir / fmt("part%d.json", rep);
    const fs::path report = dir / fmt("report%d.json", rep);
    const fs::path csv = dir / fmt("sweep%d.csv", rep);
    ok = ok && run(cli + " detect --in " + graph + " --seed 9 --restarts 2 --out " + part.string() +
                   " --report > " + report.string()) == 0;
    ok = ok && run(cli + " --jobs 1 sweep --preset one2one --communities 3 --nodes-per-comm 6 --p-dense 0.5,0.1 "
                         "--runs 3 --seed 11 --out " + csv.string()) == 0;
    partitions.push_back(slurp(part));
    reports.push_back(slurp(report));
    sweeps.push_back(drop_last_column(slurp(csv)));
  }
  fs::remove_all(dir);
  const bool same = ok && !partitions[0].empty() && !sweeps[0].empty() && partitions[0] == partitions[1] &&
                    reports[0] == reports[1] && sweeps[0] == sweeps[1];
  return {same, fmt("commands %s; partition JSON %s; report %s; sweep CSV %s", ok ? "ok" : "failed",
                    partitions[0] == partitions[1] ? "identical" : "differs",
                    reports[0] == reports[1] ? "identical" : "differs",
                    sweeps[0] == sweeps[1] ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"golden values", golden_values},
      {"incremental vs scratch", incremental_vs_scratch},
      {"coarsening and projection preserve Q", coarsening_preserves_q},
      {"oracle consistency", oracle_consistency},
      {"one-to-one recovery", one_to_one_recovery},
      {"many-to-many recovery", many_to_many_recovery},
      {"runtime scaling", scaling},
      {"metric properties", metric_properties},
      {"determinism", determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.contains(id)) continue;
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d %s: %s (%s)\n", id, criteria[i].first, outcome.pass ? "PASS" : "FAIL",
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
