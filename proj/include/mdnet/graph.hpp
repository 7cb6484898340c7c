#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mdnet {

/// Raised for malformed input files and violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vertex label as seen in files and reports (1-based).
using Vertex = std::int32_t;

struct Edge {
  Vertex u;  // u < v
  Vertex v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on vertices 1..n. Immutable after construction.
class Graph {
 public:
  /// Builds from 1-based edges. Throws Error on self-loops, duplicates, or
  /// labels outside 1..n. Edge order is preserved (normalized so u < v).
  Graph(Vertex n, std::vector<Edge> edges);

  Vertex n() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Sorted 1-based neighbor labels of `v`.
  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v - 1], adjacency_.data() + offsets_[v]};
  }
  int degree(Vertex v) const { return static_cast<int>(offsets_[v] - offsets_[v - 1]); }
  int max_degree() const;
  bool adjacent(Vertex u, Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adjacency_ == b.adjacency_ && a.offsets_ == b.offsets_;
  }

 private:
  Vertex n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

/// Assignment of every vertex to one of the communities 1..m.
///
/// Always canonical: communities are numbered by first appearance when
/// scanning vertices in ascending order, so assign(1) == 1 and every
/// community in 1..m is non-empty.
class Partition {
 public:
  Partition() = default;
  /// Canonicalizes arbitrary positive labels; assign[i] is the label of vertex i+1.
  explicit Partition(std::vector<int> labels);

  Vertex n() const { return static_cast<Vertex>(assign_.size()); }
  int m() const { return m_; }
  int community_of(Vertex v) const { return assign_[v - 1]; }
  const std::vector<int>& assignment() const { return assign_; }

  /// Members of community l (1-based), ascending.
  std::vector<Vertex> members(int l) const;
  std::vector<std::vector<Vertex>> blocks() const;

  /// Builds a partition from explicit vertex sets; sets must cover 1..n exactly once.
  static Partition from_blocks(Vertex n, const std::vector<std::vector<Vertex>>& blocks);

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> assign_;
  int m_ = 0;
};

/// Relabels to 1..m by first appearance. Idempotent.
std::vector<int> canonicalize(std::span<const int> labels);
Partition canonicalize(const Partition& p);

/// Edge-list text: "u v" per line, '#' comments, optional "n=<int>" header.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);
std::string to_edge_list(const Graph& g);

/// Partition text: "vertex community" lines, or a JSON object {"1": 3, ...}.
Partition load_partition(std::istream& in, const Graph& g);
Partition load_partition_file(const std::string& path, const Graph& g);
std::string to_partition_text(const Partition& p);

}  // namespace mdnet
