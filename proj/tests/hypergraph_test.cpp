#include <sstream>

#include "gtest/gtest.h"
#include "test_util.hpp"
#include "tricomm/hypergraph.hpp"
#include "tricomm/partition.hpp"

namespace tricomm {
namespace {

TripartiteHypergraph parse(const std::string& text) {
  std::istringstream in(text);
  return load_hypergraph(in);
}

TEST(LoadHypergraph, ReadsTwoEdgeInstance) {
  const auto g = parse("2 2 2\n0 0 0\n1 1 1\n");
  EXPECT_EQ(g.total_weight(), 2);
  ASSERT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.edges()[0], (Hyperedge{0, 0, 0, 1}));
  EXPECT_EQ(g.edges()[1], (Hyperedge{1, 1, 1, 1}));
  EXPECT_TRUE(g.is_simple());
}

TEST(LoadHypergraph, MergesDuplicateTriples) {
  const auto g = parse("2 2 2\n0 0 0\n0 0 0\n");
  ASSERT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edges()[0].weight, 2);
  EXPECT_EQ(g.total_weight(), 2);
  EXPECT_FALSE(g.is_simple());
}

TEST(LoadHypergraph, RejectsOutOfRangeIndex) {
  try {
    parse("2 2 2\n0 0 5\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("blue index out of range"), std::string::npos);
  }
}

TEST(LoadHypergraph, SkipsCommentsAndAcceptsTabsAndWeights) {
  const auto g = parse("# header next\n3\t1\t2\n# edge\n2 0 1 4\n0\t0\t0\n");
  EXPECT_EQ(g.num_nodes(), (std::array<std::size_t, 3>{3, 1, 2}));
  EXPECT_EQ(g.total_weight(), 5);
  EXPECT_EQ(g.degree(Color::Red, 2), 1u);
  EXPECT_EQ(g.degree(Color::Red, 1), 0u);
}

TEST(LoadHypergraph, ErrorsNameTheLine) {
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("# only a comment\n"), ParseError);
  EXPECT_THROW(parse("2 2\n"), ParseError);
  EXPECT_THROW(parse("2 2 2\n0 0\n"), ParseError);
  EXPECT_THROW(parse("2 2 2\n0 0 x\n"), ParseError);
  EXPECT_THROW(parse("2 2 2\n0 0 0 0\n"), ParseError);
  EXPECT_THROW(parse("2 2 2\n0 0 0 -3\n"), ParseError);
  try {
    parse("2 2 2\n0 0 0\n\n1 1\n");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Hypergraph, IncidenceListsCoverEveryEdgeOncePerColor) {
  std::mt19937_64 rng(3);
  const auto g = testing::random_hypergraph(rng, {5, 6, 7}, 0.2);
  for (Color c : kColors) {
    std::size_t total = 0;
    for (NodeId v = 0; v < g.num_nodes(c); ++v) {
      for (std::uint32_t e : g.incident(c, v)) EXPECT_EQ(g.edges()[e].endpoint(c), v);
      total += g.degree(c, v);
    }
    EXPECT_EQ(total, g.num_edges());
  }
}

TEST(Hypergraph, TotalWeightIgnoresOrderAndDuplicates) {
  std::vector<Hyperedge> edges = {{0, 1, 1, 2}, {1, 0, 0, 1}, {0, 1, 1, 3}, {1, 1, 1, 1}};
  const TripartiteHypergraph a({2, 2, 2}, edges);
  std::reverse(edges.begin(), edges.end());
  const TripartiteHypergraph b({2, 2, 2}, edges);
  EXPECT_EQ(a.total_weight(), 7);
  EXPECT_EQ(b.total_weight(), 7);
  EXPECT_EQ(std::vector<Hyperedge>(a.edges().begin(), a.edges().end()),
            std::vector<Hyperedge>(b.edges().begin(), b.edges().end()));
}

TEST(Hypergraph, SaveLoadRoundTrip) {
  std::mt19937_64 rng(11);
  const auto g = testing::random_hypergraph(rng, {4, 3, 5}, 0.3);
  std::stringstream buf;
  save_hypergraph(g, buf);
  const auto back = load_hypergraph(buf);
  EXPECT_EQ(back.num_nodes(), g.num_nodes());
  EXPECT_EQ(std::vector<Hyperedge>(back.edges().begin(), back.edges().end()),
            std::vector<Hyperedge>(g.edges().begin(), g.edges().end()));
}

TEST(Canonicalize, FirstAppearanceOrder) {
  EXPECT_EQ(canonicalize(std::vector<Label>{5, 5, 2, 7}), (std::vector<Label>{0, 0, 1, 2}));
  EXPECT_EQ(canonicalize(std::vector<Label>{0, 1, 2}), (std::vector<Label>{0, 1, 2}));
  EXPECT_EQ(canonicalize(std::vector<Label>{3, 3, 3}), (std::vector<Label>{0, 0, 0}));
  EXPECT_TRUE(canonicalize(std::vector<Label>{}).empty());
}

TEST(Canonicalize, IdempotentAndGroupingPreserving) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Label> pick(0, 40);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Label> raw(30);
    for (auto& l : raw) l = pick(rng);
    const auto once = canonicalize(raw);
    EXPECT_EQ(canonicalize(once), once);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      for (std::size_t j = 0; j < raw.size(); ++j) {
        ASSERT_EQ(raw[i] == raw[j], once[i] == once[j]);
      }
    }
  }
}

TEST(Partition, SingletonAndAllOne) {
  const auto s = Partition::singletons({2, 2, 2});
  for (Color c : kColors) {
    EXPECT_EQ(std::vector<Label>(s.labels(c).begin(), s.labels(c).end()), (std::vector<Label>{0, 1}));
    EXPECT_EQ(s.communities(c), 2u);
  }
  const auto one = Partition::all_one({3, 1, 2});
  EXPECT_EQ(one.communities(), (std::array<std::size_t, 3>{1, 1, 1}));
}

TEST(Partition, RejectsNonContiguousLabels) {
  EXPECT_THROW(testing::part({0, 2}, {0}, {0}), DomainError);
  EXPECT_NO_THROW(testing::part({1, 0}, {0}, {0}));
}

TEST(Partition, JsonRoundTrip) {
  const Partition p = testing::part({0, 0}, {0, 1}, {0, 1});
  std::stringstream buf;
  save_partition(p, buf);
  const auto text = buf.str();
  EXPECT_NE(text.find("\"red\":[0,0]"), std::string::npos);
  EXPECT_NE(text.find("\"green\":[0,1]"), std::string::npos);
  EXPECT_EQ(load_partition(buf), p);
}

TEST(Partition, JsonRoundTripRandom) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = testing::random_partition(rng, {7, 4, 9}, {3, 4, 9});
    std::stringstream buf;
    save_partition(p, buf);
    EXPECT_EQ(load_partition(buf), p);
  }
}

TEST(Partition, LoadErrors) {
  {
    std::istringstream in(R"({"red":[0,2],"green":[0],"blue":[0]})");
    try {
      load_partition(in);
      FAIL();
    } catch (const DomainError& e) {
      EXPECT_NE(std::string(e.what()).find("labels not contiguous"), std::string::npos);
    }
  }
  {
    std::istringstream in(R"({"red":[0,0],"green":[0]})");
    EXPECT_THROW(load_partition(in), ParseError);
  }
  {
    std::istringstream in(R"({"red":[0,-1],"green":[0],"blue":[0]})");
    EXPECT_THROW(load_partition(in), ParseError);
  }
  {
    std::istringstream in("not json");
    EXPECT_THROW(load_partition(in), ParseError);
  }
  {
    const auto g = testing::two_edge_graph();
    std::istringstream in(R"({"red":[0,0,0],"green":[0,1],"blue":[0,1]})");
    EXPECT_THROW(load_partition(in, g), DomainError);
  }
}

}  // namespace
}  // namespace tricomm
