#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mdnet/graph.hpp"
#include "mdnet/metrics.hpp"
#include "mdnet/rational.hpp"

namespace mdnet {

enum class Method { Exhaustive, BranchAndBound, LocalSearch };
enum class SolveStatus { ProvedOptimal, Heuristic, Infeasible };

std::string to_string(Method m);
std::string to_string(SolveStatus s);
Method parse_method(const std::string& text);

/// Largest graph the exhaustive solver and enumerator accept.
inline constexpr int kMaxExhaustiveVertices = 14;

struct SolverConfig {
  Method method = Method::LocalSearch;
  // Inclusive community-count range; unset bounds mean "free" (2..n, or 1..n
  // with allow_single_community).
  std::optional<int> m_min;
  std::optional<int> m_max;
  bool allow_single_community = false;
  std::optional<int> weak_L;
  std::uint64_t seed = 1;
  int restarts = 32;
  int max_stale_iterations = 30;
  std::optional<Rational> penalty_rho;  // defaults to n
  int threads = 0;                      // 0: MDNET_THREADS, else hardware concurrency

  static SolverConfig fixed(Method method, int m) {
    SolverConfig c;
    c.method = method;
    c.m_min = m;
    c.m_max = m;
    return c;
  }
};

struct SolveResult {
  Method method = Method::LocalSearch;
  std::optional<Partition> best;  // empty when no feasible partition exists
  Rational D;
  std::optional<CommunityReport> report;
  SolveStatus status = SolveStatus::Infeasible;
  std::uint64_t nodes_or_iterations = 0;
  double wall_time_seconds = 0;
};

/// Resolved inclusive community-count range; throws Error on invalid configs.
std::pair<int, int> community_range(const Graph& g, const SolverConfig& cfg);

std::uint64_t bell_number(int n);
std::uint64_t stirling2(int n, int k);

/// Set partitions of {1..n} in restricted-growth-string order.
///
///   PartitionEnumerator it(4, 2);
///   while (it.next()) use(it.labels());   // 7 partitions
class PartitionEnumerator {
 public:
  /// Refuses n > kMaxExhaustiveVertices; `blocks` restricts to exactly that many blocks.
  PartitionEnumerator(int n, std::optional<int> blocks = std::nullopt);

  /// Advances to the next partition; false when exhausted.
  bool next();
  /// 1-based community labels in canonical form.
  const std::vector<int>& labels() const { return labels_; }
  int blocks() const { return max_label_.empty() ? 0 : max_label_.back(); }

 private:
  bool first();

  int n_;
  std::optional<int> blocks_;
  bool started_ = false;
  bool done_ = false;
  std::vector<int> labels_;
  std::vector<int> max_label_;  // prefix maxima of labels_
};

/// Incrementally maintained partition with per-community aggregates.
class SearchState {
 public:
  SearchState(const Graph& g, const Partition& p);

  const Graph& graph() const { return *g_; }
  int m() const { return static_cast<int>(stats_.size()); }
  int community_of(Vertex v) const { return assign_[v - 1]; }
  const CommunityStats& stats(int l) const { return stats_[l - 1]; }
  const Rational& D() const { return D_; }
  /// Communities with 4e - K < L.
  int weak_violations(int L) const;

  /// Neighbors of v inside community l.
  int links(Vertex v, int l) const;

  /// Change in D from moving v out of community a into b, in O(deg v).
  /// Throws Error when a == b, v is not in a, or the move would empty a
  /// while `fixed_m` is set.
  Rational delta_relocate(Vertex v, int from, int to, bool fixed_m = true) const;
  /// Applies the move; `to == m() + 1` opens a new community. An emptied
  /// community is removed and the last community takes its index.
  void relocate(Vertex v, int to);

  Partition partition() const;
  /// True when the running aggregates equal a fresh recomputation.
  bool consistent() const;

 private:
  const Graph* g_;
  std::vector<int> assign_;
  std::vector<CommunityStats> stats_;
  Rational D_;
};

/// Admissible bound on D over every completion of `partial` (0 = unassigned)
/// into exactly m non-empty communities. Never exceeds the per-community
/// max-degree bound.
Rational completion_bound(const Graph& g, std::span<const int> partial, int m);

SolveResult solve_exhaustive(const Graph& g, const SolverConfig& cfg);
SolveResult solve_branch_and_bound(const Graph& g, const SolverConfig& cfg);
SolveResult solve_local_search(const Graph& g, const SolverConfig& cfg);
SolveResult solve(const Graph& g, const SolverConfig& cfg);

nlohmann::json to_json(const SolveResult& result, bool include_timing = false);

}  // namespace mdnet
