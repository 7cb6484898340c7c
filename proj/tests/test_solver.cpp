#include <gtest/gtest.h>

#include <random>

#include "mdnet/generators.hpp"
#include "mdnet/metrics.hpp"
#include "mdnet/solver.hpp"
#include "test_support.hpp"

using namespace mdnet;

namespace {

// Brute force over the independent generator.
std::optional<Rational> oracle_best(const Graph& g, int lo, int hi, std::optional<int> L) {
  std::optional<Rational> best;
  oracle::for_each_set_partition(g.n(), [&](const std::vector<int>& labels) {
    int m = oracle::block_count(labels);
    if (m < lo || m > hi) return;
    Partition p(labels);
    if (L) {
      for (int l = 1; l <= m; ++l) {
        if (!weak_condition(g, p, l, *L)) return;
      }
    }
    Rational d = oracle::density_double_sum(g, labels);
    if (!best || d > *best) best = d;
  });
  return best;
}

SolverConfig ls_config(int m, std::uint64_t seed = 1) {
  auto cfg = SolverConfig::fixed(Method::LocalSearch, m);
  cfg.seed = seed;
  cfg.restarts = 8;
  return cfg;
}

bool all_weak(const Graph& g, const Partition& p, int L) {
  for (int l = 1; l <= p.m(); ++l) {
    if (!weak_condition(g, p, l, L)) return false;
  }
  return true;
}

}  // namespace

TEST(Methods, ParseAndPrint) {
  EXPECT_EQ(parse_method("exhaustive"), Method::Exhaustive);
  EXPECT_EQ(parse_method("bnb"), Method::BranchAndBound);
  EXPECT_EQ(parse_method("ls"), Method::LocalSearch);
  EXPECT_EQ(parse_method("local-search"), Method::LocalSearch);
  EXPECT_THROW(parse_method("milp"), Error);
  EXPECT_EQ(parse_method(to_string(Method::BranchAndBound)), Method::BranchAndBound);
}

TEST(CommunityRange, Defaults) {
  Graph g = oracle::path_graph(5);
  SolverConfig cfg;
  EXPECT_EQ(community_range(g, cfg), (std::pair<int, int>{2, 5}));
  cfg.allow_single_community = true;
  EXPECT_EQ(community_range(g, cfg), (std::pair<int, int>{1, 5}));
  EXPECT_EQ(community_range(g, SolverConfig::fixed(Method::Exhaustive, 3)), (std::pair<int, int>{3, 3}));
  EXPECT_THROW(community_range(g, SolverConfig::fixed(Method::Exhaustive, 1)), Error);
  EXPECT_THROW(community_range(g, SolverConfig::fixed(Method::Exhaustive, 6)), Error);
  auto bad = SolverConfig::fixed(Method::LocalSearch, 2);
  bad.restarts = 0;
  EXPECT_THROW(community_range(g, bad), Error);
  bad = SolverConfig::fixed(Method::LocalSearch, 2);
  bad.weak_L = 2;
  EXPECT_THROW(community_range(g, bad), Error);
}

TEST(Exhaustive, SmallOptima) {
  SolverConfig single;
  single.method = Method::Exhaustive;
  single.allow_single_community = true;
  auto p3 = solve(oracle::path_graph(3), single);
  EXPECT_EQ(p3.D, Rational(4, 3));
  EXPECT_EQ(p3.best->m(), 1);
  EXPECT_EQ(p3.status, SolveStatus::ProvedOptimal);
  EXPECT_EQ(p3.nodes_or_iterations, bell_number(3));

  auto bridged = solve(oracle::bridged_k4s(), SolverConfig::fixed(Method::Exhaustive, 2));
  EXPECT_EQ(bridged.D, Rational(11, 2));
  EXPECT_EQ(*bridged.best, Partition({1, 1, 1, 1, 2, 2, 2, 2}));

  auto k4 = solve(oracle::complete_graph(4), SolverConfig::fixed(Method::Exhaustive, 2));
  EXPECT_EQ(k4.D, Rational(-2));
  ASSERT_TRUE(k4.report);
  EXPECT_EQ(k4.report->D, Rational(-2));
}

TEST(Exhaustive, InfeasibleWeakInstance) {
  auto cfg = SolverConfig::fixed(Method::Exhaustive, 2);
  cfg.weak_L = 1;
  auto r = solve(oracle::path_graph(3), cfg);
  EXPECT_EQ(r.status, SolveStatus::Infeasible);
  EXPECT_FALSE(r.best);
  auto j = to_json(r);
  EXPECT_EQ(j["status"], "infeasible");
}

TEST(Exhaustive, RefusesLargeGraphs) {
  EXPECT_THROW(solve(oracle::path_graph(15), SolverConfig::fixed(Method::Exhaustive, 2)), Error);
}

TEST(Exhaustive, MatchesOracle) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Graph g = oracle::random_graph(7, 0.4, seed);
    for (std::optional<int> L : {std::optional<int>(), std::optional<int>(0), std::optional<int>(1)}) {
      SolverConfig cfg;
      cfg.method = Method::Exhaustive;
      cfg.weak_L = L;
      auto r = solve(g, cfg);
      auto expected = oracle_best(g, 2, 7, L);
      ASSERT_EQ(r.best.has_value(), expected.has_value());
      if (expected) {
        EXPECT_EQ(r.D, *expected);
        EXPECT_EQ(modularity_density(g, *r.best), r.D);
      }
    }
  }
}

TEST(BranchAndBound, MatchesExhaustive) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    int n = 5 + static_cast<int>(seed % 5);
    Graph g = oracle::random_graph(n, 0.35, seed * 31);
    for (int m = 2; m <= 4; ++m) {
      for (std::optional<int> L : {std::optional<int>(), std::optional<int>(1)}) {
        auto ex_cfg = SolverConfig::fixed(Method::Exhaustive, m);
        ex_cfg.weak_L = L;
        auto bb_cfg = ex_cfg;
        bb_cfg.method = Method::BranchAndBound;
        auto ex = solve(g, ex_cfg);
        auto bb = solve(g, bb_cfg);
        ASSERT_EQ(ex.status, bb.status) << seed << " " << m;
        if (ex.best) {
          EXPECT_EQ(ex.D, bb.D);
          EXPECT_EQ(bb.best->m(), m);
          EXPECT_EQ(modularity_density(g, *bb.best), bb.D);
          if (L) {
            EXPECT_TRUE(all_weak(g, *bb.best, *L));
          }
        }
      }
    }
  }
}

TEST(BranchAndBound, NeedsFixedCount) {
  SolverConfig cfg;
  cfg.method = Method::BranchAndBound;
  EXPECT_THROW(solve(oracle::path_graph(5), cfg), Error);
}

TEST(BranchAndBound, Fig2) {
  auto inst = gen_fig2();
  auto three = solve(inst.graph, SolverConfig::fixed(Method::BranchAndBound, 3));
  EXPECT_EQ(three.D, Rational(12));
  EXPECT_EQ(three.status, SolveStatus::ProvedOptimal);
  const auto& p = *three.best;
  EXPECT_NE(p.community_of(1), p.community_of(6));
  EXPECT_NE(p.community_of(6), p.community_of(11));
  EXPECT_NE(p.community_of(1), p.community_of(11));
}

TEST(CompletionBound, AdmissibleOnEveryCompletion) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Graph g = oracle::random_graph(7, 0.45, seed);
    for (int m = 2; m <= 3; ++m) {
      for (int trial = 0; trial < 10; ++trial) {
        // Random canonical prefix with the rest unassigned.
        std::vector<int> partial(7, 0);
        int fixed = static_cast<int>(rng() % 8);
        int used = 0;
        for (int i = 0; i < fixed; ++i) {
          int l = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(used + 1, m)));
          used = std::max(used, l);
          partial[i] = l;
        }
        std::optional<Rational> best;
        oracle::for_each_set_partition(7, [&](const std::vector<int>& labels) {
          if (oracle::block_count(labels) != m) return;
          for (int i = 0; i < 7; ++i) {
            if (partial[i] != 0 && partial[i] != labels[i]) return;
          }
          Rational d = oracle::density_double_sum(g, labels);
          if (!best || d > *best) best = d;
        });
        if (best) {
          EXPECT_LE(*best, completion_bound(g, partial, m));
        } else {
          EXPECT_THROW(completion_bound(g, partial, m), Error);
        }
      }
    }
  }
}

// Sum over communities of max(largest assigned degree, largest unassigned degree).
TEST(CompletionBound, NeverAboveMaxDegreeBound) {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Graph g = oracle::random_graph(9, 0.5, seed);
    for (int m = 2; m <= 5; ++m) {
      for (int fixed = 0; fixed <= 9 - m; ++fixed) {
        std::vector<int> partial(9, 0);
        int used = 0;
        for (int i = 0; i < fixed; ++i) {
          int l = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(used + 1, m)));
          used = std::max(used, l);
          partial[i] = l;
        }
        std::optional<int> free_max;
        for (Vertex v = 1; v <= 9; ++v) {
          if (partial[v - 1] == 0) free_max = std::max(free_max.value_or(0), g.degree(v));
        }
        std::int64_t degree_bound = 0;
        for (int l = 1; l <= m; ++l) {
          std::optional<int> block_max;
          for (Vertex v = 1; v <= 9; ++v) {
            if (partial[v - 1] == l) block_max = std::max(block_max.value_or(0), g.degree(v));
          }
          degree_bound += std::max(block_max.value_or(0), free_max.value_or(0));
        }
        EXPECT_LE(completion_bound(g, partial, m), Rational(degree_bound));
      }
    }
  }
}

TEST(CompletionBound, RejectsBadInput) {
  Graph g = oracle::path_graph(4);
  EXPECT_THROW(completion_bound(g, std::vector<int>{1, 1, 1}, 2), Error);
  EXPECT_THROW(completion_bound(g, std::vector<int>{1, 1, 3, 0}, 2), Error);
  EXPECT_THROW(completion_bound(g, std::vector<int>{1, 1, 1, 0}, 3), Error);
}

TEST(SearchState, RelocateDeltaOnFig2) {
  auto inst = gen_fig2();
  SearchState st(inst.graph, inst.partition("four").partition);
  EXPECT_EQ(st.D(), Rational(46, 5));
  int from = st.community_of(1);
  int to = st.community_of(2);
  EXPECT_EQ(st.delta_relocate(1, from, to), Rational(-7, 5));
  st.relocate(1, to);
  EXPECT_EQ(st.D(), Rational(39, 5));
  EXPECT_TRUE(st.consistent());
  EXPECT_EQ(st.delta_relocate(1, to, from), Rational(7, 5));
  st.relocate(1, from);
  EXPECT_EQ(st.D(), Rational(46, 5));
  EXPECT_EQ(st.partition(), inst.partition("four").partition);
}

TEST(SearchState, RejectsBadMoves) {
  Graph g = oracle::path_graph(4);
  SearchState st(g, Partition({1, 1, 1, 2}));
  EXPECT_THROW(st.delta_relocate(1, 1, 1), Error);
  EXPECT_THROW(st.delta_relocate(1, 2, 1), Error);
  EXPECT_THROW(st.delta_relocate(4, 2, 1), Error);
  EXPECT_NO_THROW(st.delta_relocate(4, 2, 1, false));
  EXPECT_THROW(st.relocate(1, 4), Error);
}

TEST(SearchState, EveryMoveMatchesRecomputation) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Graph g = oracle::random_graph(9, 0.4, seed);
    std::vector<int> labels(9);
    for (auto& l : labels) l = 1 + static_cast<int>(rng() % 3);
    SearchState st(g, Partition(labels));
    for (int step = 0; step < 200; ++step) {
      Vertex v = 1 + static_cast<Vertex>(rng() % 9);
      int from = st.community_of(v);
      int to = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(st.m() + 1));
      if (to == from) continue;
      Rational before = st.D();
      if (to <= st.m()) {
        Rational delta = st.delta_relocate(v, from, to, false);
        st.relocate(v, to);
        ASSERT_EQ(st.D(), before + delta);
      } else {
        st.relocate(v, to);
      }
      ASSERT_TRUE(st.consistent());
      ASSERT_EQ(st.D(), modularity_density(g, st.partition()));
      for (int l = 1; l <= st.m(); ++l) ASSERT_GT(st.stats(l).size, 0);
    }
  }
}

TEST(SearchState, LinksAndViolations) {
  auto inst = gen_clique_star(3, 7, 4);
  SearchState st(inst.graph, inst.partition("split").partition);
  EXPECT_EQ(st.weak_violations(0), 1);
  EXPECT_EQ(st.weak_violations(1), 1);
  EXPECT_EQ(st.links(1, 1), 2);
  EXPECT_EQ(st.links(1, 2), 1);
  EXPECT_EQ(st.links(1, 3), 0);
}

TEST(LocalSearch, DeterministicForSeed) {
  auto karate = zachary();
  auto a = solve(karate.graph, ls_config(3, 7));
  auto b = solve(karate.graph, ls_config(3, 7));
  EXPECT_EQ(a.D, b.D);
  EXPECT_EQ(*a.best, *b.best);
  EXPECT_EQ(a.nodes_or_iterations, b.nodes_or_iterations);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_EQ(a.status, SolveStatus::Heuristic);
}

TEST(LocalSearch, ThreadCountDoesNotChangeResult) {
  auto karate = zachary();
  auto one = ls_config(4, 3);
  one.threads = 1;
  auto many = ls_config(4, 3);
  many.threads = 4;
  auto a = solve(karate.graph, one);
  auto b = solve(karate.graph, many);
  EXPECT_EQ(a.D, b.D);
  EXPECT_EQ(*a.best, *b.best);
  EXPECT_EQ(a.nodes_or_iterations, b.nodes_or_iterations);
}

TEST(LocalSearch, NeverBeatsOracleAndRespectsWeak) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Graph g = oracle::random_graph(8, 0.4, seed);
    for (std::optional<int> L : {std::optional<int>(), std::optional<int>(0), std::optional<int>(1)}) {
      for (int m = 2; m <= 3; ++m) {
        auto cfg = ls_config(m, seed);
        cfg.weak_L = L;
        auto r = solve(g, cfg);
        auto expected = oracle_best(g, m, m, L);
        if (!r.best) continue;
        ASSERT_TRUE(expected.has_value());
        EXPECT_LE(r.D, *expected);
        EXPECT_EQ(r.best->m(), m);
        EXPECT_EQ(modularity_density(g, *r.best), r.D);
        if (L) {
          EXPECT_TRUE(all_weak(g, *r.best, *L));
        }
      }
    }
  }
}

TEST(LocalSearch, FindsNegativeCommunityOptimum) {
  auto inst = gen_clique_star(3, 7, 4);
  auto cfg = ls_config(8, 1);
  cfg.restarts = 16;
  auto r = solve(inst.graph, cfg);
  EXPECT_EQ(r.D, Rational(227, 12));
  ASSERT_TRUE(r.report);
  bool negative = false;
  for (const auto& c : r.report->communities) negative |= c.density < Rational(0);
  EXPECT_TRUE(negative);

  for (int L : {0, 1}) {
    SolverConfig weak;
    weak.weak_L = L;
    weak.restarts = 16;
    auto w = solve(inst.graph, weak);
    ASSERT_TRUE(w.report);
    for (const auto& c : w.report->communities) EXPECT_GE(c.density, Rational(0));
  }
}

TEST(LocalSearch, MatchesProvedOptimaOnFig2) {
  auto inst = gen_fig2();
  for (int m : {3, 4}) {
    auto cfg = ls_config(m, 1);
    cfg.restarts = 32;
    auto ls = solve(inst.graph, cfg);
    auto bb = solve(inst.graph, SolverConfig::fixed(Method::BranchAndBound, m));
    EXPECT_EQ(ls.D, bb.D) << m;
  }
}

TEST(LocalSearch, FreeCountSweepsRange) {
  auto inst = gen_fig2();
  SolverConfig cfg;
  cfg.restarts = 8;
  auto r = solve(inst.graph, cfg);
  EXPECT_EQ(r.D, Rational(12));
  EXPECT_EQ(r.best->m(), 3);
}

TEST(SolveResult, Json) {
  auto r = solve(oracle::bridged_k4s(), SolverConfig::fixed(Method::BranchAndBound, 2));
  auto j = to_json(r);
  EXPECT_EQ(j["method"], "bnb");
  EXPECT_EQ(j["status"], "proved-optimal");
  EXPECT_EQ(j["D_exact"], "11/2");
  EXPECT_EQ(j["D"], "5.5");
  EXPECT_EQ(j["m"], 2);
  EXPECT_TRUE(j["counters"].contains("nodes_or_iterations"));
  EXPECT_FALSE(j.contains("wall_time_seconds"));
  EXPECT_TRUE(to_json(r, true).contains("wall_time_seconds"));
}
