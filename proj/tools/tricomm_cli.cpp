// tricomm: community detection in tripartite hypergraphs.
//
//   tricomm generate --preset one2one --communities 3 --nodes-per-comm 10 --p-dense 0.5 --out g.txt --truth t.json
//   tricomm detect --in g.txt --out p.json --report
//   tricomm score --in g.txt --partition p.json
//   tricomm nmi --truth t.json --pred p.json
//   tricomm oracle --in tiny.txt --out best.json
//   tricomm sweep --preset one2one --p-dense 0.5,0.1,0.05 --runs 20 --out sweep.csv

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tricomm/hypergraph.hpp"
#include "tricomm/mdl.hpp"
#include "tricomm/metrics.hpp"
#include "tricomm/optimizer.hpp"
#include "tricomm/oracle.hpp"
#include "tricomm/partition.hpp"
#include "tricomm/sweep.hpp"
#include "tricomm/synth.hpp"

namespace {

using namespace tricomm;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct Globals {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool quiet = false;
};

void info(const Globals& g, const std::string& msg) {
  if (!g.quiet) std::cerr << msg << '\n';
}

template <typename Fn>
void write_file(const std::string& path, Fn&& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  body(out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

struct GeneratorArgs {
  std::string preset = "one2one";
  std::vector<std::size_t> communities{3};
  std::size_t triples = 0;
  std::size_t nodes_per_comm = 10;
  std::optional<double> p_sparse;
  std::optional<std::uint64_t> seed;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--preset", preset, "Correspondence layout")
        ->check(CLI::IsMember({"one2one", "many2many"}));
    cmd->add_option("--communities", communities, "Communities per color (one value, or red green blue)")
        ->expected(1, 3);
    cmd->add_option("--triples", triples, "Dense community triples (many2many; default 2 x largest count)");
    cmd->add_option("--nodes-per-comm", nodes_per_comm, "Nodes in every community");
    cmd->add_option("--p-sparse", p_sparse, "Hyperedge probability outside dense triples (default 0.001 p_dense)");
    cmd->add_option("--seed", seed, "Random seed (overrides the global --seed)");
  }

  std::array<std::size_t, 3> community_triple() const {
    if (communities.size() == 1) return {communities[0], communities[0], communities[0]};
    if (communities.size() == 3) return {communities[0], communities[1], communities[2]};
    throw DomainError("--communities takes one or three values");
  }
  Preset preset_kind() const { return preset == "one2one" ? Preset::OneToOne : Preset::ManyToMany; }
};

GeneratorConfig make_generator(const GeneratorArgs& args, double p_dense, std::uint64_t seed) {
  const auto comms = args.community_triple();
  const double p_sparse = args.p_sparse.value_or(default_p_sparse(p_dense));
  if (args.preset_kind() == Preset::OneToOne) {
    if (comms[0] != comms[1] || comms[0] != comms[2]) {
      throw DomainError("one2one needs equal community counts per color");
    }
    return preset_one_to_one(comms[0], args.nodes_per_comm, p_dense, p_sparse, seed);
  }
  std::size_t triples = args.triples;
  if (triples == 0) triples = 2 * std::max({comms[0], comms[1], comms[2]});
  return preset_many_to_many(comms, triples, args.nodes_per_comm, p_dense, p_sparse, seed);
}

std::vector<double> parse_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (token.empty()) continue;
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw DomainError("invalid number '" + token + "'");
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detection in tripartite hypergraphs"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--seed", globals.seed, "Default random seed");
  app.add_option("--jobs", globals.jobs, "Concurrent sweep cells")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", globals.quiet, "Suppress progress messages");

  // generate
  auto* gen = app.add_subcommand("generate", "Sample a planted-partition hypergraph");
  GeneratorArgs gen_args;
  gen_args.add_to(gen);
  double gen_p_dense = 0.5;
  std::string gen_out;
  std::string gen_truth;
  double gen_max_edges = 1e7;
  gen->add_option("--p-dense", gen_p_dense, "Hyperedge probability inside dense triples");
  gen->add_option("--out", gen_out, "Hypergraph file to write")->required();
  gen->add_option("--truth", gen_truth, "Planted partition JSON to write");
  gen->add_option("--max-edges", gen_max_edges, "Refuse when the expected edge count is larger");

  // detect
  auto* det = app.add_subcommand("detect", "Minimize the description length of a hypergraph");
  std::string det_in;
  std::string det_out;
  std::optional<std::uint64_t> det_seed;
  OptimizerConfig det_config;
  bool det_report = false;
  det->add_option("--in", det_in, "Hypergraph file")->required()->check(CLI::ExistingFile);
  det->add_option("--seed", det_seed, "Random seed (overrides the global --seed)");
  det->add_option("--restarts", det_config.restarts, "Independent runs; the lowest Q wins")
      ->check(CLI::PositiveNumber);
  det->add_option("--epsilon", det_config.epsilon, "Minimum accepted Q decrease in bits");
  det->add_option("--max-outer-iters", det_config.max_outer_iters, "Cap on coarsening rounds");
  det->add_option("--max-sweeps", det_config.max_sweeps, "Cap on sweeps per local-moving phase");
  det->add_option("--out", det_out, "Partition JSON to write (stdout when omitted and no --report)");
  det->add_flag("--report", det_report, "Print Q decomposition and counters as JSON");

  // score
  auto* score = app.add_subcommand("score", "Evaluate Q for a given partition");
  std::string score_in;
  std::string score_partition;
  score->add_option("--in", score_in, "Hypergraph file")->required()->check(CLI::ExistingFile);
  score->add_option("--partition", score_partition, "Partition JSON")->required()->check(CLI::ExistingFile);

  // nmi
  auto* nmi_cmd = app.add_subcommand("nmi", "Normalized mutual information between partitions");
  std::string nmi_truth;
  std::string nmi_pred;
  std::string nmi_color;
  nmi_cmd->add_option("--truth", nmi_truth, "Reference partition JSON")->required()->check(CLI::ExistingFile);
  nmi_cmd->add_option("--pred", nmi_pred, "Predicted partition JSON")->required()->check(CLI::ExistingFile);
  nmi_cmd->add_option("--color", nmi_color, "red, green, blue, or all (all colors pooled); default prints each color")
      ->check(CLI::IsMember({"red", "green", "blue", "all"}));

  // oracle
  auto* orc = app.add_subcommand("oracle", "Exact minimum of Q by exhaustive enumeration");
  std::string orc_in;
  std::string orc_out;
  std::uint64_t orc_limit = 10'000'000;
  orc->add_option("--in", orc_in, "Hypergraph file")->required()->check(CLI::ExistingFile);
  orc->add_option("--limit", orc_limit, "Maximum number of partition combinations");
  orc->add_option("--out", orc_out, "Optimal partition JSON to write");

  // sweep
  auto* swp = app.add_subcommand("sweep", "NMI versus p_dense on planted instances, as CSV");
  GeneratorArgs swp_args;
  swp_args.add_to(swp);
  std::vector<std::string> swp_p_dense;
  std::size_t swp_runs = 20;
  std::string swp_out;
  OptimizerConfig swp_config;
  std::optional<std::size_t> swp_jobs;
  swp->add_option("--p-dense", swp_p_dense, "Comma-separated p_dense values")->required();
  swp->add_option("--runs", swp_runs, "Runs per p_dense value")->check(CLI::PositiveNumber);
  swp->add_option("--restarts", swp_config.restarts, "Detection restarts per run")->check(CLI::PositiveNumber);
  swp->add_option("--epsilon", swp_config.epsilon, "Minimum accepted Q decrease in bits");
  swp->add_option("--jobs", swp_jobs, "Concurrent cells (overrides the global --jobs)")->check(CLI::PositiveNumber);
  swp->add_option("--out", swp_out, "CSV file to write (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const std::uint64_t seed = gen_args.seed.value_or(globals.seed);
      GeneratorConfig config = make_generator(gen_args, gen_p_dense, seed);
      config.max_expected_edges = gen_max_edges;
      const GeneratedInstance instance = generate(config);
      write_file(gen_out, [&](std::ostream& out) {
        out << "# planted " << gen_args.preset << " seed=" << seed << " p_dense=" << fixed6(config.p_dense)
            << " p_sparse=" << fixed6(config.p_sparse) << '\n';
        save_hypergraph(instance.graph, out);
      });
      if (!gen_truth.empty()) {
        write_file(gen_truth, [&](std::ostream& out) { save_partition(instance.truth, out); });
      }
      info(globals, "wrote " + std::to_string(instance.graph.num_edges()) + " hyperedges to " + gen_out);
    } else if (*det) {
      const auto graph = load_hypergraph_file(det_in);
      det_config.seed = det_seed.value_or(globals.seed);
      const DetectionResult result = detect(graph, det_config);
      if (!det_out.empty()) {
        write_file(det_out, [&](std::ostream& out) { save_partition(result.partition, out); });
      } else if (!det_report) {
        save_partition(result.partition, std::cout);
      }
      if (det_report) {
        nlohmann::ordered_json report;
        report["q"] = result.q;
        report["l_index"] = result.l_index;
        report["l_recover"] = result.l_recover;
        const auto comms = result.partition.communities();
        report["communities"] = {comms[0], comms[1], comms[2]};
        report["outer_iterations"] = result.outer_iterations;
        report["total_sweeps"] = result.total_sweeps;
        report["total_moves"] = result.total_moves;
        report["seed_used"] = result.seed_used;
        std::cout << report.dump(2) << '\n';
      }
    } else if (*score) {
      const auto graph = load_hypergraph_file(score_in);
      std::ifstream in(score_partition);
      const Partition partition = load_partition(in, graph);
      const Quality q = quality(graph, partition);
      std::cout << "q " << fixed6(q.q) << '\n'
                << "l_index " << fixed6(q.l_index) << '\n'
                << "l_recover " << fixed6(q.l_recover) << '\n';
    } else if (*nmi_cmd) {
      const Partition truth = load_partition_file(nmi_truth);
      const Partition pred = load_partition_file(nmi_pred);
      if (nmi_color == "all") {
        std::cout << fixed6(nmi_all_colors(truth, pred)) << '\n';
      } else {
        const ColorScores scores = nmi_per_color(truth, pred);
        for (Color c : kColors) {
          if (nmi_color.empty()) {
            std::cout << color_name(c) << ' ' << fixed6(scores.at(c)) << '\n';
          } else if (nmi_color == color_name(c)) {
            std::cout << fixed6(scores.at(c)) << '\n';
          }
        }
      }
    } else if (*orc) {
      const auto graph = load_hypergraph_file(orc_in);
      const ExactResult best = exact_min_q(graph, orc_limit);
      if (!orc_out.empty()) {
        write_file(orc_out, [&](std::ostream& out) { save_partition(best.partition, out); });
      }
      std::cout << "q " << fixed6(best.q) << '\n';
      info(globals, "scored " + std::to_string(best.combinations) + " partition combinations");
    } else if (*swp) {
      SweepConfig config;
      config.preset = swp_args.preset_kind();
      config.communities = swp_args.community_triple();
      if (config.preset == Preset::OneToOne &&
          (config.communities[0] != config.communities[1] || config.communities[0] != config.communities[2])) {
        throw DomainError("one2one needs equal community counts per color");
      }
      config.triples = swp_args.triples;
      config.nodes_per_comm = swp_args.nodes_per_comm;
      config.p_dense = parse_list(swp_p_dense);
      config.p_sparse = swp_args.p_sparse;
      config.runs = swp_runs;
      config.seed = swp_args.seed.value_or(globals.seed);
      config.optimizer = swp_config;
      config.jobs = swp_jobs.value_or(globals.jobs);

      auto emit = [&](std::ostream& out) {
        SweepCsvWriter writer(out, config.runs);
        run_sweep(config, [&](const SweepRow& row) {
          writer.row(row);
          info(globals, "p_dense=" + fixed6(row.p_dense) + " run=" + std::to_string(row.run) +
                            " nmi=" + fixed6(row.nmi.red) + "/" + fixed6(row.nmi.green) + "/" +
                            fixed6(row.nmi.blue));
        });
      };
      if (swp_out.empty()) {
        emit(std::cout);
      } else {
        write_file(swp_out, emit);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
