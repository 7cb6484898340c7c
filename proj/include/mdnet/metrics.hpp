#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "mdnet/graph.hpp"
#include "mdnet/rational.hpp"

namespace mdnet {

/// Integer aggregates of one community.
///
///   internal_edges  e = edges with both ends inside
///   degree_sum      K = sum of member degrees
///   cut             c = K - 2e, edges leaving the community
struct CommunityStats {
  std::int64_t size = 0;
  std::int64_t internal_edges = 0;
  std::int64_t degree_sum = 0;

  std::int64_t cut() const { return degree_sum - 2 * internal_edges; }
  /// 4e - K, the numerator of the community's density.
  std::int64_t density_numerator() const { return 4 * internal_edges - degree_sum; }
  /// (2e - c) / size; undefined for an empty community.
  Rational density() const { return Rational(density_numerator(), size); }
  bool weak(int L) const { return density_numerator() >= L; }

  friend bool operator==(const CommunityStats&, const CommunityStats&) = default;
};

struct CommunityEntry {
  int id = 0;
  CommunityStats stats;
  Rational density;
  bool weak_L0 = false;
  bool weak_L1 = false;
};

struct CommunityReport {
  std::vector<CommunityEntry> communities;
  Rational D;
  std::optional<Rational> Q;  // absent for edgeless graphs
};

CommunityStats community_stats(const Graph& g, const Partition& p, int l);
/// Stats of every community in one pass over the edges; index l-1 holds community l.
std::vector<CommunityStats> all_community_stats(const Graph& g, const Partition& p);

Rational community_density(const Graph& g, const Partition& p, int l);
Rational modularity_density(const Graph& g, const Partition& p);
/// Throws Error("modularity undefined") on an edgeless graph.
Rational modularity(const Graph& g, const Partition& p);

/// 4e_l >= K_l + L, evaluated in integers. L must be 0 or 1.
bool weak_condition(const Graph& g, const Partition& p, int l, int L);

CommunityReport full_report(const Graph& g, const Partition& p);

/// {"communities":[...],"D":...,"Q":...}; rationals as "num/den" plus 6-significant-digit decimals.
nlohmann::json to_json(const CommunityReport& report);

}  // namespace mdnet
