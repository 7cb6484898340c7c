#include <gtest/gtest.h>

#include <sstream>

#include "mdnet/generators.hpp"
#include "mdnet/graph.hpp"
#include "test_support.hpp"

using namespace mdnet;

namespace {

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

Partition parse_partition(const std::string& text, const Graph& g) {
  std::istringstream in(text);
  return load_partition(in, g);
}

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(EdgeList, PathOnThreeVertices) {
  Graph g = parse("1 2\n2 3");
  EXPECT_EQ(g.n(), 3);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_EQ(g.degree(1), 1);
  EXPECT_EQ(g.degree(2), 2);
  EXPECT_EQ(g.degree(3), 1);
}

TEST(EdgeList, CommentsHeaderAndIsolatedVertices) {
  Graph g = parse("# tiny\nn=5\n\n# reversed pair\n2 1\n");
  EXPECT_EQ(g.n(), 5);
  EXPECT_EQ(g.edges().front(), (Edge{1, 2}));
  EXPECT_EQ(g.degree(5), 0);
}

TEST(EdgeList, Errors) {
  EXPECT_NE(error_of([] { parse("1 1"); }).find("self-loop"), std::string::npos);
  EXPECT_NE(error_of([] { parse("1 2\n2 1"); }).find("duplicate edge"), std::string::npos);
  EXPECT_NE(error_of([] { parse("1 2\n2 x"); }).find("line 2"), std::string::npos);
  EXPECT_NE(error_of([] { parse("1 2 0.5"); }).find("weighted"), std::string::npos);
  EXPECT_NE(error_of([] { parse("n=2\n1 3"); }).find("n=2"), std::string::npos);
  EXPECT_THROW(parse("# nothing"), Error);
}

TEST(EdgeList, EmbeddedKarateClub) {
  Graph g = zachary().graph;
  EXPECT_EQ(g.n(), 34);
  EXPECT_EQ(g.num_edges(), 78u);
  EXPECT_EQ(g.degree(34), 17);
  EXPECT_EQ(g.degree(1), 16);
}

TEST(EdgeList, RoundTripAndGraphInvariants) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Graph g = oracle::random_graph(2 + static_cast<int>(seed % 12), 0.35, seed);
    std::size_t degree_sum = 0;
    for (Vertex v = 1; v <= g.n(); ++v) {
      degree_sum += static_cast<std::size_t>(g.degree(v));
      for (Vertex w : g.neighbors(v)) {
        EXPECT_NE(v, w);
        EXPECT_TRUE(g.adjacent(w, v));
      }
    }
    EXPECT_EQ(degree_sum, 2 * g.num_edges());
    EXPECT_EQ(parse(to_edge_list(g)), g);
  }
}

TEST(PartitionFile, RelabelsByFirstAppearance) {
  Graph g = parse("1 2\n2 3");
  Partition p = parse_partition("1 5\n2 5\n3 9", g);
  EXPECT_EQ(p.assignment(), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(p.m(), 2);
}

TEST(PartitionFile, JsonForm) {
  Graph g = parse("1 2\n2 3");
  Partition p = parse_partition(R"({"3": 4, "1": 7, "2": 4})", g);
  EXPECT_EQ(p.assignment(), (std::vector<int>{1, 2, 2}));
}

TEST(PartitionFile, Errors) {
  Graph g = parse("1 2\n2 3");
  EXPECT_EQ(error_of([&] { parse_partition("1 1\n2 1", g); }), "unassigned vertex 3");
  EXPECT_NE(error_of([&] { parse_partition("1 1\n1 2\n2 1\n3 1", g); }).find("listed twice"), std::string::npos);
  EXPECT_NE(error_of([&] { parse_partition("1 1\n2 1\n3 1\n4 1", g); }).find("outside"), std::string::npos);
  EXPECT_NE(error_of([&] { parse_partition("1 1\n2 one\n3 1", g); }).find("line 2"), std::string::npos);
}

TEST(PartitionFile, KarateTwoCommunityListing) {
  const auto inst = zachary();
  std::ostringstream text;
  const std::set<int> first{1, 2, 3, 4, 5, 6, 7, 8, 11, 12, 13, 14, 17, 18, 20, 22};
  for (int v = 1; v <= 34; ++v) text << v << " " << (first.count(v) ? 1 : 2) << "\n";
  Partition p = parse_partition(text.str(), inst.graph);
  EXPECT_EQ(p.m(), 2);
  EXPECT_EQ(p.members(1).size(), 16u);
  EXPECT_EQ(p.members(2).size(), 18u);
  EXPECT_EQ(p, inst.partition("m2").partition);
}

TEST(Canonicalize, Examples) {
  EXPECT_EQ(canonicalize(std::vector<int>{7, 7, 2}), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(canonicalize(std::vector<int>{1, 2, 3}), (std::vector<int>{1, 2, 3}));
}

TEST(Canonicalize, IdempotentAndPreservesBlocks) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> labels(1 + rng() % 12);
    for (auto& l : labels) l = 1 + static_cast<int>(rng() % 40);
    auto once = canonicalize(labels);
    EXPECT_EQ(canonicalize(once), once);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (std::size_t j = 0; j < labels.size(); ++j) {
        EXPECT_EQ(labels[i] == labels[j], once[i] == once[j]);
      }
    }
  }
}

TEST(Partition, FromBlocksValidates) {
  EXPECT_THROW(Partition::from_blocks(3, {{1, 2}}), Error);
  EXPECT_THROW(Partition::from_blocks(3, {{1, 2}, {2, 3}}), Error);
  EXPECT_EQ(Partition::from_blocks(3, {{3}, {1, 2}}).assignment(), (std::vector<int>{1, 1, 2}));
}
