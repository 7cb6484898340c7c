#include <algorithm>
#include <numeric>

#include "mdnet/solver.hpp"

namespace mdnet {

namespace {

// Partial assignment with the counters needed for bounding.
//
// For a vertex i the final contribution to 4e - K of its community is
// 2 k_i^in - k_i, and k_i^in can only grow by neighbors that are still
// unassigned. A community's density is the mean of these contributions, so it
// is at most the best mean obtainable from its fixed members plus any subset
// of unassigned vertices, each scored optimistically.
class PartialAssignment {
 public:
  PartialAssignment(const Graph& g, int m)
      : g_(g), n_(g.n()), m_(m),
        comm_(static_cast<std::size_t>(n_), -1),
        e_(static_cast<std::size_t>(m), 0), K_(static_cast<std::size_t>(m), 0), size_(static_cast<std::size_t>(m), 0),
        links_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(m), 0),
        free_links_(static_cast<std::size_t>(n_), 0) {
    for (Vertex v = 1; v <= n_; ++v) free_links_[v - 1] = g.degree(v);
  }

  int used() const { return used_; }
  int community(Vertex v) const { return comm_[v - 1]; }

  void assign(Vertex v, int c) {
    comm_[v - 1] = c;
    e_[c] += links_[idx(v, c)];
    K_[c] += g_.degree(v);
    size_[c] += 1;
    for (Vertex w : g_.neighbors(v)) {
      links_[idx(w, c)] += 1;
      free_links_[w - 1] -= 1;
    }
    if (size_[c] == 1) ++used_;
  }

  void unassign(Vertex v) {
    const int c = comm_[v - 1];
    for (Vertex w : g_.neighbors(v)) {
      links_[idx(w, c)] -= 1;
      free_links_[w - 1] += 1;
    }
    size_[c] -= 1;
    K_[c] -= g_.degree(v);
    e_[c] -= links_[idx(v, c)];
    comm_[v - 1] = -1;
    if (size_[c] == 0) --used_;
  }

  Rational density_sum() const {
    Rational D;
    for (int c = 0; c < m_; ++c) {
      if (size_[c] > 0) D += Rational(4 * e_[c] - K_[c], size_[c]);
    }
    return D;
  }

  bool weak_ok(int L) const {
    for (int c = 0; c < m_; ++c) {
      if (size_[c] > 0 && 4 * e_[c] - K_[c] < L) return false;
    }
    return true;
  }

  // Sum over communities of the best achievable mean contribution.
  Rational bound() const {
    std::vector<std::int64_t> fixed_sum(static_cast<std::size_t>(m_), 0);
    std::vector<std::int64_t> free_vertices;
    for (Vertex v = 1; v <= n_; ++v) {
      int c = comm_[v - 1];
      if (c >= 0) {
        fixed_sum[c] += 2 * (links_[idx(v, c)] + free_links_[v - 1]) - g_.degree(v);
      } else {
        free_vertices.push_back(v);
      }
    }
    Rational total;
    std::vector<std::int64_t> scores;
    int unopened = 0;
    for (int c = 0; c < m_; ++c) {
      if (size_[c] == 0) {
        ++unopened;
        continue;
      }
      scores.clear();
      for (Vertex v : free_vertices) scores.push_back(2 * (links_[idx(v, c)] + free_links_[v - 1]) - g_.degree(v));
      std::sort(scores.begin(), scores.end(), std::greater<>());
      std::int64_t num = fixed_sum[c];
      std::int64_t den = size_[c];
      for (auto s : scores) {
        // adding a score above the current mean raises it
        if (s * den <= num) break;
        num += s;
        den += 1;
      }
      total += Rational(num, den);
    }
    if (unopened > 0) {
      std::int64_t best = 0;
      bool any = false;
      for (Vertex v : free_vertices) {
        std::int64_t s = 2 * free_links_[v - 1] - g_.degree(v);
        if (!any || s > best) best = s;
        any = true;
      }
      if (!any) throw Error("no unassigned vertex left for an empty community");
      total += Rational(best) * Rational(unopened);
    }
    return total;
  }

 private:
  std::size_t idx(Vertex v, int c) const {
    return static_cast<std::size_t>(v - 1) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(c);
  }

  const Graph& g_;
  int n_;
  int m_;
  int used_ = 0;
  std::vector<int> comm_;
  std::vector<std::int64_t> e_;
  std::vector<std::int64_t> K_;
  std::vector<std::int64_t> size_;
  std::vector<int> links_;
  std::vector<int> free_links_;
};

class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, int m, std::optional<int> weak_L) : g_(g), m_(m), weak_L_(weak_L), state_(g, m) {
    order_.resize(static_cast<std::size_t>(g.n()));
    std::iota(order_.begin(), order_.end(), 1);
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  }

  void run() { descend(0); }

  bool found() const { return found_; }
  const std::vector<int>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void descend(std::size_t depth) {
    ++nodes_;
    if (depth == order_.size()) {
      if (state_.used() != m_) return;
      if (weak_L_ && !state_.weak_ok(*weak_L_)) return;
      Rational D = state_.density_sum();
      if (!found_ || D > incumbent_) {
        found_ = true;
        incumbent_ = D;
        best_.resize(order_.size());
        for (Vertex v = 1; v <= g_.n(); ++v) best_[v - 1] = state_.community(v) + 1;
      }
      return;
    }
    if (found_ && state_.bound() <= incumbent_) return;

    const Vertex v = order_[depth];
    const int remaining = static_cast<int>(order_.size() - depth) - 1;
    const int top = std::min(state_.used(), m_ - 1);
    for (int c = 0; c <= top; ++c) {
      int used_after = std::max(state_.used(), c + 1);
      if (used_after + remaining < m_) continue;
      state_.assign(v, c);
      descend(depth + 1);
      state_.unassign(v);
    }
  }

  const Graph& g_;
  int m_;
  std::optional<int> weak_L_;
  PartialAssignment state_;
  std::vector<Vertex> order_;
  bool found_ = false;
  Rational incumbent_;
  std::vector<int> best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

Rational completion_bound(const Graph& g, std::span<const int> partial, int m) {
  if (static_cast<Vertex>(partial.size()) != g.n()) throw Error("partial assignment size differs from graph");
  if (m < 1 || m > g.n()) throw Error("community count out of range");
  for (int l : partial) {
    if (l < 0 || l > m) throw Error("partial label outside 0..m");
  }
  std::vector<int> canon(static_cast<std::size_t>(m) + 1, -1);
  int next = 0;
  int free_count = 0;
  for (int l : partial) {
    if (l == 0) {
      ++free_count;
    } else if (canon[l] < 0) {
      canon[l] = next++;
    }
  }
  if (next + free_count < m) throw Error("partial assignment cannot be completed into " + std::to_string(m) + " communities");
  std::fill(canon.begin(), canon.end(), -1);
  next = 0;
  PartialAssignment state(g, m);
  for (Vertex v = 1; v <= g.n(); ++v) {
    int l = partial[v - 1];
    if (l == 0) continue;
    if (canon[l] < 0) canon[l] = next++;
    state.assign(v, canon[l]);
  }
  return state.bound();
}

SolveResult solve_branch_and_bound(const Graph& g, const SolverConfig& cfg) {
  auto [lo, hi] = community_range(g, cfg);
  if (lo != hi) throw Error("branch-and-bound needs a fixed community count (m_min == m_max)");
  BranchAndBound search(g, lo, cfg.weak_L);
  search.run();

  SolveResult r;
  r.method = Method::BranchAndBound;
  r.nodes_or_iterations = search.nodes();
  if (!search.found()) {
    r.status = SolveStatus::Infeasible;
    return r;
  }
  r.best = Partition(search.best());
  r.report = full_report(g, *r.best);
  r.D = r.report->D;
  r.status = SolveStatus::ProvedOptimal;
  return r;
}

}  // namespace mdnet
