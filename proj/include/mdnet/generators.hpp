#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdnet/graph.hpp"

namespace mdnet {

struct CanonicalPartition {
  std::string name;
  Partition partition;
  // Published values exactly as printed (6 significant digits), when they exist.
  std::optional<std::string> published_D;
  std::optional<std::string> published_Q;
};

struct NamedInstance {
  std::string name;
  Graph graph;
  std::vector<CanonicalPartition> partitions;

  const CanonicalPartition& partition(const std::string& name) const;
};

enum class Attachment {
  RoundRobin,       // satellite i attaches to hub vertex ((i-1) mod r) + 1
  FirstHubVertex,   // every satellite attaches to hub vertex 1
};

/// Hub clique on 1..r with p satellite q-cliques, each joined to the hub by
/// one edge ending at the satellite's lowest vertex.
///
/// Partitions: "split" (hub alone, every satellite alone) and "merged" (hub
/// absorbed by the satellite attached at hub vertex min(r, 3), or satellite 1
/// when none is attached there). Requires r >= 3, p >= 1, q >= 2.
NamedInstance gen_clique_star(int hub_size, int satellites, int satellite_size,
                              Attachment attachment = Attachment::RoundRobin);

/// Triangle {1,6,11} with 5-cliques {2,3,4,5,16}, {7,8,9,10,17},
/// {12,13,14,15,18}; each triangle vertex links to three vertices of its
/// clique. Partitions "four" and "three".
NamedInstance gen_fig2();

/// 34-vertex karate club graph with partitions "m2", "m3", "m4_optimal"
/// and "m4_authors".
NamedInstance zachary();

}  // namespace mdnet
