#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "tricomm/hypergraph.hpp"
#include "tricomm/mdl.hpp"
#include "tricomm/metrics.hpp"
#include "tricomm/optimizer.hpp"
#include "tricomm/oracle.hpp"
#include "tricomm/partition.hpp"
#include "tricomm/synth.hpp"

namespace py = pybind11;
using namespace tricomm;

namespace {

using Labels = std::vector<Label>;
using EdgeTuple = std::tuple<NodeId, NodeId, NodeId, Weight>;

Color parse_color(const std::string& name) {
  for (Color c : kColors) {
    if (name == color_name(c)) return c;
  }
  throw DomainError("unknown color '" + name + "'");
}

TripartiteHypergraph make_graph(std::array<std::size_t, 3> counts, const std::vector<EdgeTuple>& edges) {
  std::vector<Hyperedge> list;
  list.reserve(edges.size());
  for (const auto& [r, g, b, w] : edges) list.push_back({r, g, b, w});
  return TripartiteHypergraph(counts, std::move(list));
}

std::vector<EdgeTuple> edge_tuples(const TripartiteHypergraph& g) {
  std::vector<EdgeTuple> out;
  out.reserve(g.num_edges());
  for (const auto& e : g.edges()) out.emplace_back(e.red, e.green, e.blue, e.weight);
  return out;
}

py::tuple as_tuple(const std::array<std::size_t, 3>& v) { return py::make_tuple(v[0], v[1], v[2]); }

Labels labels_of(const Partition& p, Color c) { return {p.labels(c).begin(), p.labels(c).end()}; }

py::dict partition_dict(const Partition& p) {
  py::dict d;
  for (Color c : kColors) d[color_name(c)] = labels_of(p, c);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tripartite hypergraph community detection by description length";
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<TripartiteHypergraph>(m, "Hypergraph")
      .def(py::init(&make_graph), py::arg("counts"), py::arg("edges"),
           "Build from per-color node counts and (red, green, blue, weight) tuples. "
           "Repeated triples are merged by summing weights.")
      .def_property_readonly("num_nodes", [](const TripartiteHypergraph& g) { return as_tuple(g.num_nodes()); })
      .def_property_readonly("num_edges", &TripartiteHypergraph::num_edges)
      .def_property_readonly("total_weight", &TripartiteHypergraph::total_weight)
      .def("edges", &edge_tuples)
      .def("to_text", [](const TripartiteHypergraph& g) {
        std::ostringstream out;
        save_hypergraph(g, out);
        return out.str();
      })
      .def("__repr__", [](const TripartiteHypergraph& g) {
        const auto n = g.num_nodes();
        return "<Hypergraph nodes=(" + std::to_string(n[0]) + "," + std::to_string(n[1]) + "," +
               std::to_string(n[2]) + ") edges=" + std::to_string(g.num_edges()) + ">";
      });

  py::class_<Partition>(m, "Partition")
      .def(py::init([](Labels red, Labels green, Labels blue) {
             return Partition::from_raw({std::move(red), std::move(green), std::move(blue)});
           }),
           py::arg("red"), py::arg("green"), py::arg("blue"),
           "Per-color label lists; labels are renumbered in first-appearance order.")
      .def_static("singletons", &Partition::singletons)
      .def_static("all_one", &Partition::all_one)
      .def("labels", [](const Partition& p, const std::string& color) { return labels_of(p, parse_color(color)); })
      .def_property_readonly("communities", [](const Partition& p) { return as_tuple(p.communities()); })
      .def("to_dict", &partition_dict)
      .def("to_json", [](const Partition& p) {
        std::ostringstream out;
        save_partition(p, out);
        return out.str();
      })
      .def(py::self == py::self)
      .def("__repr__", [](const Partition& p) {
        const auto c = p.communities();
        return "<Partition communities=(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
               std::to_string(c[2]) + ")>";
      });

  py::class_<Quality>(m, "Quality")
      .def_readonly("q", &Quality::q)
      .def_readonly("l_index", &Quality::l_index)
      .def_readonly("l_recover", &Quality::l_recover);

  py::class_<DetectionResult>(m, "DetectionResult")
      .def_readonly("partition", &DetectionResult::partition)
      .def_readonly("q", &DetectionResult::q)
      .def_readonly("l_index", &DetectionResult::l_index)
      .def_readonly("l_recover", &DetectionResult::l_recover)
      .def_readonly("outer_iterations", &DetectionResult::outer_iterations)
      .def_readonly("total_sweeps", &DetectionResult::total_sweeps)
      .def_readonly("total_moves", &DetectionResult::total_moves)
      .def_readonly("seed_used", &DetectionResult::seed_used);

  m.def("parse_hypergraph", [](const std::string& text) {
    std::istringstream in(text);
    return load_hypergraph(in);
  }, py::arg("text"), "Parse the plain-text hypergraph format.");
  m.def("load_hypergraph", &load_hypergraph_file, py::arg("path"));
  m.def("parse_partition", [](const std::string& text) {
    std::istringstream in(text);
    return load_partition(in);
  }, py::arg("text"));

  m.def("log2_binomial", &log2_binomial, py::arg("n"), py::arg("k"));
  m.def("quality", py::overload_cast<const TripartiteHypergraph&, const Partition&>(&quality), py::arg("graph"),
        py::arg("partition"));

  m.def(
      "detect",
      [](const TripartiteHypergraph& g, std::uint64_t seed, std::size_t restarts, double epsilon,
         std::size_t max_outer_iters, std::size_t max_sweeps) {
        OptimizerConfig config;
        config.seed = seed;
        config.restarts = restarts;
        config.epsilon = epsilon;
        config.max_outer_iters = max_outer_iters;
        config.max_sweeps = max_sweeps;
        py::gil_scoped_release release;
        return detect(g, config);
      },
      py::arg("graph"), py::arg("seed") = 0, py::arg("restarts") = 1, py::arg("epsilon") = 1e-9,
      py::arg("max_outer_iters") = 100, py::arg("max_sweeps") = 1000);

  m.def(
      "generate_one_to_one",
      [](std::size_t communities, std::size_t nodes_per_comm, double p_dense, std::optional<double> p_sparse,
         std::uint64_t seed) {
        auto inst = generate(preset_one_to_one(communities, nodes_per_comm, p_dense,
                                               p_sparse.value_or(default_p_sparse(p_dense)), seed));
        return py::make_tuple(std::move(inst.graph), std::move(inst.truth));
      },
      py::arg("communities"), py::arg("nodes_per_comm"), py::arg("p_dense"), py::arg("p_sparse") = py::none(),
      py::arg("seed") = 0, "Planted one-to-one instance; returns (graph, truth).");
  m.def(
      "generate_many_to_many",
      [](std::array<std::size_t, 3> communities, std::size_t triples, std::size_t nodes_per_comm, double p_dense,
         std::optional<double> p_sparse, std::uint64_t seed) {
        auto inst = generate(preset_many_to_many(communities, triples, nodes_per_comm, p_dense,
                                                 p_sparse.value_or(default_p_sparse(p_dense)), seed));
        return py::make_tuple(std::move(inst.graph), std::move(inst.truth));
      },
      py::arg("communities"), py::arg("triples"), py::arg("nodes_per_comm"), py::arg("p_dense"),
      py::arg("p_sparse") = py::none(), py::arg("seed") = 0,
      "Planted many-to-many instance; returns (graph, truth).");

  m.def("nmi", [](const Labels& x, const Labels& y) { return nmi(x, y); }, py::arg("x"), py::arg("y"));
  m.def(
      "nmi_per_color",
      [](const Partition& truth, const Partition& pred) {
        const auto s = nmi_per_color(truth, pred);
        py::dict d;
        d["red"] = s.red;
        d["green"] = s.green;
        d["blue"] = s.blue;
        return d;
      },
      py::arg("truth"), py::arg("pred"));
  m.def("nmi_all_colors", &nmi_all_colors, py::arg("truth"), py::arg("pred"));

  m.def(
      "exact_min_q",
      [](const TripartiteHypergraph& g, std::uint64_t limit) {
        auto r = exact_min_q(g, limit);
        return py::make_tuple(std::move(r.partition), r.q);
      },
      py::arg("graph"), py::arg("limit") = 10'000'000, "Exhaustive minimum of Q; returns (partition, q).");
}
