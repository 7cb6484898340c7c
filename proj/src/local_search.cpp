#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <random>
#include <thread>

#include "mdnet/solver.hpp"

namespace mdnet {

namespace {

enum class MoveKind { Relocate, Swap, Merge, Split };

struct Move {
  MoveKind kind = MoveKind::Relocate;
  Vertex u = 0;             // relocate / swap
  Vertex v = 0;             // swap
  int a = 0;                // relocate target, merge pair, split source
  int b = 0;
  std::vector<Vertex> part; // split: vertices that leave community a
};

// Approximate values only screen candidates; every accepted move is compared exactly.
constexpr double kScreen = 1e-9;

struct BestMove {
  bool any = false;
  double approx = 0;
  Rational exact;
  Move move;
};

class Objective {
 public:
  Objective(std::optional<int> weak_L, Rational rho) : L_(weak_L), rho_(rho), rho_d_(rho.to_double()) {}

  Rational exact(const CommunityStats& s) const {
    if (s.size == 0) return 0;
    Rational t = s.density();
    if (L_) {
      std::int64_t gap = *L_ - s.density_numerator();
      if (gap > 0) t -= rho_ * Rational(gap);
    }
    return t;
  }

  double approx(const CommunityStats& s) const {
    if (s.size == 0) return 0;
    double t = static_cast<double>(s.density_numerator()) / static_cast<double>(s.size);
    if (L_) {
      std::int64_t gap = *L_ - s.density_numerator();
      if (gap > 0) t -= rho_d_ * static_cast<double>(gap);
    }
    return t;
  }

  Rational total(const SearchState& st) const {
    Rational z;
    for (int l = 1; l <= st.m(); ++l) z += exact(st.stats(l));
    return z;
  }

  bool feasible(const SearchState& st) const { return !L_ || st.weak_violations(*L_) == 0; }

  void consider(BestMove& best, const Move& mv, std::initializer_list<CommunityStats> before,
                std::initializer_list<CommunityStats> after) const {
    double approx_delta = 0;
    for (const auto& s : after) approx_delta += approx(s);
    for (const auto& s : before) approx_delta -= approx(s);
    if (approx_delta < -kScreen) return;
    if (best.any && approx_delta < best.approx - kScreen) return;
    Rational delta;
    for (const auto& s : after) delta += exact(s);
    for (const auto& s : before) delta -= exact(s);
    if (delta <= Rational(0)) return;
    if (best.any && delta <= best.exact) return;
    best.any = true;
    best.approx = approx_delta;
    best.exact = delta;
    best.move = mv;
  }

 private:
  std::optional<int> L_;
  Rational rho_;
  double rho_d_;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
  int between(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

 private:
  std::mt19937_64 engine_;
};

struct RestartOutcome {
  std::optional<Partition> best;
  Rational D;
  std::uint64_t iterations = 0;
};

class LocalSearch {
 public:
  LocalSearch(const Graph& g, int lo, int hi, const Objective& objective)
      : g_(g), lo_(lo), hi_(hi), obj_(objective) {}

  RestartOutcome run(std::uint64_t seed, int max_stale) {
    Rng rng(seed);
    RestartOutcome out;
    SearchState state(g_, random_partition(rng));
    SearchState home = state;
    Rational home_value;
    bool have_home = false;
    int stale = 0;
    while (stale < max_stale) {
      out.iterations += descend(state);
      Rational value = obj_.total(state);
      if (obj_.feasible(state) && (!out.best || state.D() > out.D)) {
        out.best = state.partition();
        out.D = state.D();
      }
      if (!have_home || value > home_value) {
        stale = 0;
      } else {
        ++stale;
      }
      if (!have_home || value >= home_value) {
        home = state;
        home_value = value;
        have_home = true;
      }
      state = home;
      out.iterations += perturb(state, rng);
    }
    return out;
  }

 private:
  Partition random_partition(Rng& rng) const {
    const int n = g_.n();
    const int m = rng.between(lo_, std::min(hi_, n));
    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i + 1;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels[perm[i] - 1] = i < m ? i + 1 : rng.between(1, m);
    return Partition(std::move(labels));
  }

  std::uint64_t perturb(SearchState& st, Rng& rng) const {
    const int kicks = 2 + static_cast<int>(rng.below(3));
    std::uint64_t applied = 0;
    for (int k = 0; k < kicks; ++k) {
      Vertex v = rng.between(1, g_.n());
      int from = st.community_of(v);
      bool can_open = st.m() < hi_ && st.stats(from).size > 1;
      int choices = st.m() - 1 + (can_open ? 1 : 0);
      if (choices == 0) continue;
      int pick = rng.between(1, choices);
      int to = pick >= from ? pick + 1 : pick;  // skips `from`; m()+1 opens a new community
      if (st.stats(from).size == 1 && st.m() - 1 < lo_) continue;
      st.relocate(v, to);
      ++applied;
      check(st);
    }
    return applied;
  }

  static void check(const SearchState& st) {
#ifdef MDNET_CHECK_STATE
    if (!st.consistent()) throw std::logic_error("search state diverged from recomputation");
#else
    (void)st;
#endif
  }

  // Variable neighborhood descent; returns the number of applied moves.
  std::uint64_t descend(SearchState& st) const {
    std::uint64_t moves = 0;
    while (true) {
      BestMove best = best_relocate(st);
      if (!best.any) best = best_swap(st);
      if (!best.any) best = best_merge(st);
      if (!best.any) best = best_split(st);
      if (!best.any) return moves;
#ifdef MDNET_CHECK_STATE
      const Rational before = obj_.total(st);
#endif
      apply(st, best.move);
      ++moves;
#ifdef MDNET_CHECK_STATE
      if (obj_.total(st) - before != best.exact) throw std::logic_error("move delta disagrees with its application");
#endif
    }
  }

  std::vector<int> link_matrix(const SearchState& st) const {
    const int m = st.m();
    std::vector<int> links(static_cast<std::size_t>(g_.n()) * static_cast<std::size_t>(m), 0);
    for (const auto& e : g_.edges()) {
      links[(e.u - 1) * m + st.community_of(e.v) - 1] += 1;
      links[(e.v - 1) * m + st.community_of(e.u) - 1] += 1;
    }
    return links;
  }

  BestMove best_relocate(const SearchState& st) const {
    BestMove best;
    const int m = st.m();
    auto links = link_matrix(st);
    for (Vertex v = 1; v <= g_.n(); ++v) {
      const int a = st.community_of(v);
      const auto& sa = st.stats(a);
      if (sa.size == 1 && m - 1 < lo_) continue;
      const int k = g_.degree(v);
      CommunityStats a2{sa.size - 1, sa.internal_edges - links[(v - 1) * m + a - 1], sa.degree_sum - k};
      for (int b = 1; b <= m; ++b) {
        if (b == a) continue;
        const auto& sb = st.stats(b);
        CommunityStats b2{sb.size + 1, sb.internal_edges + links[(v - 1) * m + b - 1], sb.degree_sum + k};
        Move mv;
        mv.kind = MoveKind::Relocate;
        mv.u = v;
        mv.a = b;
        obj_.consider(best, mv, {sa, sb}, {a2, b2});
      }
    }
    return best;
  }

  BestMove best_swap(const SearchState& st) const {
    BestMove best;
    const int m = st.m();
    auto links = link_matrix(st);
    for (Vertex u = 1; u <= g_.n(); ++u) {
      const int a = st.community_of(u);
      for (Vertex v = u + 1; v <= g_.n(); ++v) {
        const int b = st.community_of(v);
        if (a == b) continue;
        const int adj = g_.adjacent(u, v) ? 1 : 0;
        const auto& sa = st.stats(a);
        const auto& sb = st.stats(b);
        const int ku = g_.degree(u);
        const int kv = g_.degree(v);
        CommunityStats a2{sa.size,
                          sa.internal_edges - links[(u - 1) * m + a - 1] + links[(v - 1) * m + a - 1] - adj,
                          sa.degree_sum - ku + kv};
        CommunityStats b2{sb.size,
                          sb.internal_edges - links[(v - 1) * m + b - 1] + links[(u - 1) * m + b - 1] - adj,
                          sb.degree_sum - kv + ku};
        Move mv;
        mv.kind = MoveKind::Swap;
        mv.u = u;
        mv.v = v;
        obj_.consider(best, mv, {sa, sb}, {a2, b2});
      }
    }
    return best;
  }

  BestMove best_merge(const SearchState& st) const {
    BestMove best;
    const int m = st.m();
    if (m - 1 < lo_) return best;
    std::vector<int> between(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
    for (const auto& e : g_.edges()) {
      int a = st.community_of(e.u);
      int b = st.community_of(e.v);
      if (a != b) {
        between[(a - 1) * m + b - 1] += 1;
        between[(b - 1) * m + a - 1] += 1;
      }
    }
    for (int a = 1; a <= m; ++a) {
      for (int b = a + 1; b <= m; ++b) {
        const auto& sa = st.stats(a);
        const auto& sb = st.stats(b);
        CommunityStats merged{sa.size + sb.size, sa.internal_edges + sb.internal_edges + between[(a - 1) * m + b - 1],
                              sa.degree_sum + sb.degree_sum};
        Move mv;
        mv.kind = MoveKind::Merge;
        mv.a = a;
        mv.b = b;
        obj_.consider(best, mv, {sa, sb}, {merged});
      }
    }
    return best;
  }

  // Greedy bisection: keep moving the vertex whose links into the new side
  // most exceed its links to the old side; the best prefix is the candidate.
  BestMove best_split(const SearchState& st) const {
    BestMove best;
    if (st.m() + 1 > hi_) return best;
    for (int c = 1; c <= st.m(); ++c) {
      const auto& whole = st.stats(c);
      if (whole.size < 2) continue;
      std::vector<Vertex> stay;
      for (Vertex v = 1; v <= g_.n(); ++v) {
        if (st.community_of(v) == c) stay.push_back(v);
      }
      std::vector<char> moved(static_cast<std::size_t>(g_.n()) + 1, 0);
      CommunityStats keep = whole;
      CommunityStats leave{};
      std::vector<Vertex> order;
      std::size_t best_prefix = 0;
      double best_value = 0;
      Rational best_exact;
      while (stay.size() > 1) {
        std::size_t pick = 0;
        int pick_gain = 0;
        int pick_out = 0;
        int pick_in = 0;
        for (std::size_t i = 0; i < stay.size(); ++i) {
          int to_leave = 0;
          int to_keep = 0;
          for (Vertex w : g_.neighbors(stay[i])) {
            if (st.community_of(w) != c) continue;
            if (moved[w]) {
              ++to_leave;
            } else {
              ++to_keep;
            }
          }
          int gain = to_leave - to_keep;
          if (i == 0 || gain > pick_gain) {
            pick = i;
            pick_gain = gain;
            pick_out = to_leave;
            pick_in = to_keep;
          }
        }
        Vertex v = stay[pick];
        stay.erase(stay.begin() + static_cast<std::ptrdiff_t>(pick));
        moved[v] = 1;
        order.push_back(v);
        const int k = g_.degree(v);
        keep = {keep.size - 1, keep.internal_edges - pick_in, keep.degree_sum - k};
        leave = {leave.size + 1, leave.internal_edges + pick_out, leave.degree_sum + k};
        double value = obj_.approx(keep) + obj_.approx(leave);
        if (best_prefix == 0 || value > best_value + kScreen) {
          best_prefix = order.size();
          best_value = value;
          best_exact = obj_.exact(keep) + obj_.exact(leave);
        } else if (value > best_value - kScreen) {
          Rational exact = obj_.exact(keep) + obj_.exact(leave);
          if (exact > best_exact) {
            best_prefix = order.size();
            best_value = value;
            best_exact = exact;
          }
        }
      }
      // rebuild the stats of the chosen prefix for the exact comparison
      CommunityStats out{};
      CommunityStats in = whole;
      std::vector<char> chosen(static_cast<std::size_t>(g_.n()) + 1, 0);
      for (std::size_t i = 0; i < best_prefix; ++i) chosen[order[i]] = 1;
      for (std::size_t i = 0; i < best_prefix; ++i) {
        Vertex v = order[i];
        out.size += 1;
        out.degree_sum += g_.degree(v);
        in.size -= 1;
        in.degree_sum -= g_.degree(v);
        for (Vertex w : g_.neighbors(v)) {
          if (st.community_of(w) != c) continue;
          if (chosen[w]) {
            if (w > v) {
              out.internal_edges += 1;
              in.internal_edges -= 1;
            }
          } else {
            in.internal_edges -= 1;
          }
        }
      }
      Move mv;
      mv.kind = MoveKind::Split;
      mv.a = c;
      mv.part.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(best_prefix));
      obj_.consider(best, mv, {whole}, {in, out});
    }
    return best;
  }

  void apply(SearchState& st, const Move& mv) const {
    switch (mv.kind) {
      case MoveKind::Relocate:
        st.relocate(mv.u, mv.a);
        break;
      case MoveKind::Swap: {
        // move out of the larger side first so neither community empties midway
        int a = st.community_of(mv.u);
        int b = st.community_of(mv.v);
        if (st.stats(a).size > 1) {
          st.relocate(mv.u, b);
          check(st);
          st.relocate(mv.v, a);
        } else {
          st.relocate(mv.v, a);
          check(st);
          st.relocate(mv.u, b);
        }
        break;
      }
      case MoveKind::Merge: {
        // move b's members into a; removing b may renumber the last community
        std::vector<Vertex> members;
        for (Vertex v = 1; v <= g_.n(); ++v) {
          if (st.community_of(v) == mv.b) members.push_back(v);
        }
        for (Vertex v : members) {
          st.relocate(v, mv.a);
          check(st);
        }
        break;
      }
      case MoveKind::Split: {
        const int fresh = st.m() + 1;
        for (Vertex v : mv.part) {
          st.relocate(v, fresh);
          check(st);
        }
        break;
      }
    }
    check(st);
  }

  const Graph& g_;
  int lo_;
  int hi_;
  const Objective& obj_;
};

int worker_count(const SolverConfig& cfg) {
  int threads = cfg.threads;
  if (threads <= 0) {
    if (const char* env = std::getenv("MDNET_THREADS")) threads = std::atoi(env);
  }
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(threads, 1, cfg.restarts);
}

}  // namespace

SolveResult solve_local_search(const Graph& g, const SolverConfig& cfg) {
  auto [lo, hi] = community_range(g, cfg);
  const Objective objective(cfg.weak_L, cfg.penalty_rho.value_or(Rational(g.n())));
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(cfg.restarts));
  auto worker = [&] {
    LocalSearch search(g, lo, hi, objective);
    for (int r = next++; r < cfg.restarts; r = next++) {
      try {
        outcomes[r] = search.run(cfg.seed + static_cast<std::uint64_t>(r), cfg.max_stale_iterations);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  const int threads = worker_count(cfg);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // reduce in restart order so the result does not depend on scheduling
  SolveResult r;
  r.method = Method::LocalSearch;
  for (const auto& o : outcomes) {
    r.nodes_or_iterations += o.iterations;
    if (o.best && (!r.best || o.D > r.D)) {
      r.best = o.best;
      r.D = o.D;
    }
  }
  if (!r.best) {
    r.status = SolveStatus::Infeasible;
    return r;
  }
  r.report = full_report(g, *r.best);
  r.status = SolveStatus::Heuristic;
  return r;
}

}  // namespace mdnet
