#include "mdnet/solver.hpp"

namespace mdnet {

SearchState::SearchState(const Graph& g, const Partition& p) : g_(&g), assign_(p.assignment()) {
  if (p.n() != g.n()) throw Error("partition and graph sizes differ");
  stats_ = all_community_stats(g, p);
  for (const auto& s : stats_) D_ += s.density();
}

int SearchState::weak_violations(int L) const {
  int count = 0;
  for (const auto& s : stats_) count += s.weak(L) ? 0 : 1;
  return count;
}

int SearchState::links(Vertex v, int l) const {
  int count = 0;
  for (Vertex w : g_->neighbors(v)) count += assign_[w - 1] == l ? 1 : 0;
  return count;
}

Rational SearchState::delta_relocate(Vertex v, int from, int to, bool fixed_m) const {
  if (from == to) throw Error("relocation needs two distinct communities");
  if (from < 1 || from > m() || to < 1 || to > m()) throw Error("community index out of range");
  if (community_of(v) != from) throw Error("vertex " + std::to_string(v) + " is not in community " + std::to_string(from));
  const auto& a = stats_[from - 1];
  const auto& b = stats_[to - 1];
  if (a.size == 1 && fixed_m) throw Error("move would empty community " + std::to_string(from));

  const int k = g_->degree(v);
  const int in_a = links(v, from);
  const int in_b = links(v, to);
  CommunityStats a2{a.size - 1, a.internal_edges - in_a, a.degree_sum - k};
  CommunityStats b2{b.size + 1, b.internal_edges + in_b, b.degree_sum + k};
  Rational delta = b2.density() - a.density() - b.density();
  if (a2.size > 0) delta += a2.density();
  return delta;
}

void SearchState::relocate(Vertex v, int to) {
  const int from = community_of(v);
  if (from == to) return;
  if (to < 1 || to > m() + 1) throw Error("community index out of range");
  if (to == m() + 1) {
    if (stats_[from - 1].size == 1) return;  // a singleton moving to a new community changes nothing
    stats_.emplace_back();
  }
  auto& a = stats_[from - 1];
  auto& b = stats_[to - 1];
  const int k = g_->degree(v);
  D_ -= a.density();
  if (b.size > 0) D_ -= b.density();
  a.internal_edges -= links(v, from);
  b.internal_edges += links(v, to);
  a.size -= 1;
  a.degree_sum -= k;
  b.size += 1;
  b.degree_sum += k;
  assign_[v - 1] = to;
  D_ += b.density();
  if (a.size > 0) {
    D_ += a.density();
    return;
  }
  // drop the empty community; the last one takes its index
  const int last = m();
  if (from != last) {
    stats_[from - 1] = stats_[last - 1];
    for (auto& c : assign_) {
      if (c == last) c = from;
    }
  }
  stats_.pop_back();
}

Partition SearchState::partition() const { return Partition(assign_); }

bool SearchState::consistent() const {
  Partition p = partition();
  auto fresh = all_community_stats(*g_, p);
  // the canonical relabeling only permutes communities
  std::vector<int> order(static_cast<std::size_t>(m()), 0);
  for (std::size_t i = 0; i < assign_.size(); ++i) order[assign_[i] - 1] = p.assignment()[i];
  Rational D;
  for (int l = 1; l <= m(); ++l) {
    if (stats_[l - 1].size == 0 || order[l - 1] == 0) return false;
    if (!(stats_[l - 1] == fresh[order[l - 1] - 1])) return false;
    D += stats_[l - 1].density();
  }
  return D == D_ && D == modularity_density(*g_, p);
}

}  // namespace mdnet
