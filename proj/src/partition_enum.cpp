#include <stdexcept>

#include "mdnet/solver.hpp"

namespace mdnet {

std::uint64_t bell_number(int n) {
  if (n < 0 || n > 25) throw Error("Bell number out of 64-bit range");
  // Bell triangle
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

std::uint64_t stirling2(int n, int k) {
  if (n < 0 || k < 0 || n > 25) throw Error("Stirling number out of range");
  std::vector<std::vector<std::uint64_t>> s(static_cast<std::size_t>(n) + 1,
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= i; ++j) s[i][j] = static_cast<std::uint64_t>(j) * s[i - 1][j] + s[i - 1][j - 1];
  }
  return k > n ? 0 : s[n][k];
}

PartitionEnumerator::PartitionEnumerator(int n, std::optional<int> blocks) : n_(n), blocks_(blocks) {
  if (n < 1) throw Error("partition enumeration needs at least one element");
  if (n > kMaxExhaustiveVertices) {
    throw Error("refusing to enumerate partitions of " + std::to_string(n) + " elements: the Bell number B(" +
                std::to_string(n) + ") explodes; the limit is " + std::to_string(kMaxExhaustiveVertices));
  }
  labels_.assign(static_cast<std::size_t>(n), 1);
  max_label_.assign(static_cast<std::size_t>(n), 1);
}

bool PartitionEnumerator::first() {
  int k = blocks_.value_or(1);
  if (k < 1 || k > n_) return false;
  for (int j = 0; j < n_; ++j) {
    int tail = n_ - j;  // positions from j to the end
    labels_[j] = tail < k ? k - tail + 1 : 1;
    max_label_[j] = std::max(j > 0 ? max_label_[j - 1] : 0, labels_[j]);
  }
  return true;
}

bool PartitionEnumerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    if (!first()) done_ = true;
    return !done_;
  }
  for (int i = n_ - 1; i >= 1; --i) {
    const int prefix_max = max_label_[i - 1];
    const int value = labels_[i] + 1;
    if (value > prefix_max + 1) continue;
    const int new_max = std::max(prefix_max, value);
    const int remaining = n_ - 1 - i;
    if (blocks_ && (new_max > *blocks_ || new_max + remaining < *blocks_)) continue;
    labels_[i] = value;
    max_label_[i] = new_max;
    const int fresh = blocks_ ? *blocks_ - new_max : 0;
    for (int j = i + 1; j < n_; ++j) {
      int from_end = n_ - j;
      labels_[j] = from_end <= fresh ? new_max + (fresh - from_end) + 1 : 1;
      max_label_[j] = std::max(max_label_[j - 1], labels_[j]);
    }
    return true;
  }
  done_ = true;
  return false;
}

}  // namespace mdnet
