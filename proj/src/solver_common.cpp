#include <chrono>

#include "mdnet/solver.hpp"

namespace mdnet {

std::string to_string(Method m) {
  switch (m) {
    case Method::Exhaustive: return "exhaustive";
    case Method::BranchAndBound: return "bnb";
    case Method::LocalSearch: return "ls";
  }
  return "?";
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::ProvedOptimal: return "proved-optimal";
    case SolveStatus::Heuristic: return "heuristic";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

Method parse_method(const std::string& text) {
  if (text == "exhaustive") return Method::Exhaustive;
  if (text == "bnb") return Method::BranchAndBound;
  if (text == "ls" || text == "local-search") return Method::LocalSearch;
  throw Error("unknown method '" + text + "' (expected exhaustive, bnb or ls)");
}

std::pair<int, int> community_range(const Graph& g, const SolverConfig& cfg) {
  const int floor = cfg.allow_single_community ? 1 : 2;
  int lo = cfg.m_min.value_or(floor);
  int hi = cfg.m_max.value_or(g.n());
  if (lo < floor) {
    throw Error("m_min=" + std::to_string(lo) + " below " + std::to_string(floor) +
                " (a single community is only admitted with allow_single_community)");
  }
  if (hi > g.n()) throw Error("m_max=" + std::to_string(hi) + " exceeds the vertex count " + std::to_string(g.n()));
  if (lo > hi) throw Error("empty community range " + std::to_string(lo) + ".." + std::to_string(hi));
  if (cfg.weak_L && *cfg.weak_L != 0 && *cfg.weak_L != 1) throw Error("weak constraint L must be 0 or 1");
  if (cfg.restarts < 1) throw Error("restarts must be positive");
  if (cfg.max_stale_iterations < 1) throw Error("max_stale_iterations must be positive");
  if (cfg.penalty_rho && *cfg.penalty_rho <= Rational(0)) throw Error("penalty rho must be positive");
  return {lo, hi};
}

SolveResult solve(const Graph& g, const SolverConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  SolveResult r;
  switch (cfg.method) {
    case Method::Exhaustive: r = solve_exhaustive(g, cfg); break;
    case Method::BranchAndBound: r = solve_branch_and_bound(g, cfg); break;
    case Method::LocalSearch: r = solve_local_search(g, cfg); break;
  }
  r.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

nlohmann::json to_json(const SolveResult& result, bool include_timing) {
  nlohmann::json j;
  j["method"] = to_string(result.method);
  j["status"] = to_string(result.status);
  j["counters"] = {{"nodes_or_iterations", result.nodes_or_iterations}};
  if (include_timing) j["wall_time_seconds"] = result.wall_time_seconds;
  if (!result.best) {
    j["D"] = nullptr;
    j["m"] = nullptr;
    j["partition"] = nullptr;
    return j;
  }
  j["D"] = to_significant(result.D);
  j["D_exact"] = result.D.str();
  j["m"] = result.best->m();
  nlohmann::json part = nlohmann::json::object();
  for (Vertex v = 1; v <= result.best->n(); ++v) part[std::to_string(v)] = result.best->community_of(v);
  j["partition"] = std::move(part);
  j["communities"] = result.best->blocks();
  if (result.report) j["report"] = to_json(*result.report);
  return j;
}

}  // namespace mdnet
