#include <numeric>

#include "mdnet/solver.hpp"

namespace mdnet {

namespace {

// Depth-first walk over restricted growth strings. D is tracked as an
// integer scaled by lcm(1..n), which is exact for n <= 14.
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const Graph& g, int lo, int hi, std::optional<int> weak_L)
      : g_(g), n_(g.n()), lo_(lo), hi_(hi), weak_L_(weak_L) {
    scale_ = 1;
    for (int i = 2; i <= n_; ++i) scale_ = std::lcm(scale_, static_cast<std::int64_t>(i));
    label_.assign(static_cast<std::size_t>(n_), -1);
    e_.assign(static_cast<std::size_t>(n_), 0);
    K_.assign(static_cast<std::size_t>(n_), 0);
    size_.assign(static_cast<std::size_t>(n_), 0);
  }

  void run() { descend(0, 0, 0); }

  bool found() const { return found_; }
  const std::vector<int>& best() const { return best_; }
  std::uint64_t leaves() const { return leaves_; }

 private:
  std::int64_t term(int c) const {
    return size_[c] == 0 ? 0 : (4 * e_[c] - K_[c]) * (scale_ / size_[c]);
  }

  void descend(int t, int used, std::int64_t scaled_D) {
    if (t == n_) {
      ++leaves_;
      if (used < lo_) return;
      if (found_ && scaled_D <= best_scaled_) return;
      if (weak_L_) {
        for (int c = 0; c < used; ++c) {
          if (4 * e_[c] - K_[c] < *weak_L_) return;
        }
      }
      found_ = true;
      best_scaled_ = scaled_D;
      best_.assign(label_.begin(), label_.end());
      return;
    }
    const Vertex v = t + 1;
    const int remaining = n_ - t - 1;
    const int top = std::min(used, hi_ - 1);
    for (int c = 0; c <= top; ++c) {
      int now_used = std::max(used, c + 1);
      if (now_used + remaining < lo_) continue;
      int inside = 0;
      for (Vertex w : g_.neighbors(v)) {
        if (w < v && label_[w - 1] == c) ++inside;
      }
      std::int64_t before = term(c);
      label_[t] = c;
      e_[c] += inside;
      K_[c] += g_.degree(v);
      size_[c] += 1;
      descend(t + 1, now_used, scaled_D - before + term(c));
      size_[c] -= 1;
      K_[c] -= g_.degree(v);
      e_[c] -= inside;
      label_[t] = -1;
    }
  }

  const Graph& g_;
  int n_;
  int lo_;
  int hi_;
  std::optional<int> weak_L_;
  std::int64_t scale_;
  std::vector<int> label_;
  std::vector<std::int64_t> e_;
  std::vector<std::int64_t> K_;
  std::vector<std::int64_t> size_;
  bool found_ = false;
  std::int64_t best_scaled_ = 0;
  std::vector<int> best_;
  std::uint64_t leaves_ = 0;
};

}  // namespace

SolveResult solve_exhaustive(const Graph& g, const SolverConfig& cfg) {
  if (g.n() > kMaxExhaustiveVertices) {
    throw Error("exhaustive search refuses n=" + std::to_string(g.n()) + " > " +
                std::to_string(kMaxExhaustiveVertices) + ": the number of partitions grows as the Bell number");
  }
  auto [lo, hi] = community_range(g, cfg);
  ExhaustiveSearch search(g, lo, hi, cfg.weak_L);
  search.run();

  SolveResult r;
  r.method = Method::Exhaustive;
  r.nodes_or_iterations = search.leaves();
  if (!search.found()) {
    r.status = SolveStatus::Infeasible;
    return r;
  }
  std::vector<int> labels = search.best();
  for (auto& l : labels) ++l;
  r.best = Partition(std::move(labels));
  r.report = full_report(g, *r.best);
  r.D = r.report->D;
  r.status = SolveStatus::ProvedOptimal;
  return r;
}

}  // namespace mdnet
