#include "mdnet/metrics.hpp"

namespace mdnet {

namespace {

void check_community(const Partition& p, int l) {
  if (l < 1 || l > p.m()) {
    throw Error("community " + std::to_string(l) + " out of range 1.." + std::to_string(p.m()));
  }
}

void check_partition(const Graph& g, const Partition& p) {
  if (p.n() != g.n()) {
    throw Error("partition covers " + std::to_string(p.n()) + " vertices, graph has " + std::to_string(g.n()));
  }
}

nlohmann::json rational_json(const Rational& r) {
  return {{"exact", r.str()}, {"decimal", to_significant(r)}};
}

}  // namespace

std::vector<CommunityStats> all_community_stats(const Graph& g, const Partition& p) {
  check_partition(g, p);
  std::vector<CommunityStats> stats(static_cast<std::size_t>(p.m()));
  for (Vertex v = 1; v <= g.n(); ++v) {
    auto& s = stats[p.community_of(v) - 1];
    ++s.size;
    s.degree_sum += g.degree(v);
  }
  for (const auto& e : g.edges()) {
    int cu = p.community_of(e.u);
    if (cu == p.community_of(e.v)) ++stats[cu - 1].internal_edges;
  }
  return stats;
}

CommunityStats community_stats(const Graph& g, const Partition& p, int l) {
  check_partition(g, p);
  check_community(p, l);
  CommunityStats s;
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (p.community_of(v) != l) continue;
    ++s.size;
    s.degree_sum += g.degree(v);
    for (Vertex w : g.neighbors(v)) {
      if (w > v && p.community_of(w) == l) ++s.internal_edges;
    }
  }
  return s;
}

Rational community_density(const Graph& g, const Partition& p, int l) {
  return community_stats(g, p, l).density();
}

Rational modularity_density(const Graph& g, const Partition& p) {
  Rational D;
  for (const auto& s : all_community_stats(g, p)) D += s.density();
  return D;
}

Rational modularity(const Graph& g, const Partition& p) {
  if (g.num_edges() == 0) throw Error("modularity undefined for a graph without edges");
  const auto two_m = static_cast<std::int64_t>(2 * g.num_edges());
  Rational Q;
  for (const auto& s : all_community_stats(g, p)) {
    Rational share(s.degree_sum, two_m);
    Q += Rational(2 * s.internal_edges, two_m) - share * share;
  }
  return Q;
}

bool weak_condition(const Graph& g, const Partition& p, int l, int L) {
  if (L != 0 && L != 1) throw Error("weak constraint L must be 0 or 1");
  return community_stats(g, p, l).weak(L);
}

CommunityReport full_report(const Graph& g, const Partition& p) {
  CommunityReport report;
  auto stats = all_community_stats(g, p);
  for (std::size_t i = 0; i < stats.size(); ++i) {
    CommunityEntry entry;
    entry.id = static_cast<int>(i) + 1;
    entry.stats = stats[i];
    entry.density = stats[i].density();
    entry.weak_L0 = stats[i].weak(0);
    entry.weak_L1 = stats[i].weak(1);
    report.D += entry.density;
    report.communities.push_back(entry);
  }
  if (g.num_edges() > 0) report.Q = modularity(g, p);
  return report;
}

nlohmann::json to_json(const CommunityReport& report) {
  nlohmann::json communities = nlohmann::json::array();
  for (const auto& c : report.communities) {
    communities.push_back({{"id", c.id},
                           {"size", c.stats.size},
                           {"internal_edges", c.stats.internal_edges},
                           {"cut", c.stats.cut()},
                           {"density", rational_json(c.density)},
                           {"weak_L0", c.weak_L0},
                           {"weak_L1", c.weak_L1}});
  }
  nlohmann::json j;
  j["communities"] = std::move(communities);
  j["D"] = to_significant(report.D);
  j["D_exact"] = report.D.str();
  if (report.Q) {
    j["Q"] = to_significant(*report.Q);
    j["Q_exact"] = report.Q->str();
  } else {
    j["Q"] = nullptr;
  }
  return j;
}

}  // namespace mdnet
