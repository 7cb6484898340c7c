#include "mdnet/generators.hpp"

#include <algorithm>

namespace mdnet {

namespace {

void add_clique(std::vector<Edge>& edges, const std::vector<Vertex>& vs) {
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) edges.push_back({vs[a], vs[b]});
  }
}

std::vector<Vertex> range(Vertex first, Vertex last) {
  std::vector<Vertex> out;
  for (Vertex v = first; v <= last; ++v) out.push_back(v);
  return out;
}

}  // namespace

const CanonicalPartition& NamedInstance::partition(const std::string& key) const {
  auto it = std::find_if(partitions.begin(), partitions.end(), [&](const auto& cp) { return cp.name == key; });
  if (it == partitions.end()) throw Error("instance '" + name + "' has no partition '" + key + "'");
  return *it;
}

NamedInstance gen_clique_star(int r, int p, int q, Attachment attachment) {
  if (r < 3 || p < 1 || q < 2) throw Error("clique-star requires hub >= 3, satellites >= 1, satellite size >= 2");
  const Vertex n = r + p * q;
  std::vector<Edge> edges;
  add_clique(edges, range(1, r));
  std::vector<Vertex> hub_of(static_cast<std::size_t>(p));
  for (int i = 1; i <= p; ++i) add_clique(edges, range(r + (i - 1) * q + 1, r + i * q));
  for (int i = 1; i <= p; ++i) {
    Vertex hub = attachment == Attachment::RoundRobin ? ((i - 1) % r) + 1 : 1;
    hub_of[i - 1] = hub;
    edges.push_back({hub, r + (i - 1) * q + 1});
  }

  std::vector<int> split(static_cast<std::size_t>(n));
  for (Vertex v = 1; v <= n; ++v) split[v - 1] = v <= r ? 1 : 2 + (v - r - 1) / q;

  const Vertex target = std::min(r, 3);
  int absorber = 1;
  for (int i = 1; i <= p; ++i) {
    if (hub_of[i - 1] == target) {
      absorber = i;
      break;
    }
  }
  std::vector<int> merged = split;
  for (Vertex v = 1; v <= r; ++v) merged[v - 1] = absorber + 1;

  NamedInstance inst{"clique-star", Graph(n, std::move(edges)), {}};
  const bool published = r == 3 && p == 7 && q == 4;
  inst.partitions.push_back({"split", Partition(split),
                             published ? std::optional<std::string>("18.9167") : std::nullopt, std::nullopt});
  inst.partitions.push_back({"merged", Partition(merged),
                             published ? std::optional<std::string>("18.5") : std::nullopt, std::nullopt});
  return inst;
}

NamedInstance gen_fig2() {
  std::vector<Edge> edges;
  const std::vector<Vertex> hubs{1, 6, 11};
  const std::vector<std::vector<Vertex>> cliques{{2, 3, 4, 5, 16}, {7, 8, 9, 10, 17}, {12, 13, 14, 15, 18}};
  add_clique(edges, hubs);
  for (const auto& c : cliques) add_clique(edges, c);
  for (std::size_t h = 0; h < hubs.size(); ++h) {
    for (int t = 0; t < 3; ++t) edges.push_back({hubs[h], cliques[h][t]});
  }

  NamedInstance inst{"fig2", Graph(18, std::move(edges)), {}};
  inst.partitions.push_back({"four", Partition::from_blocks(18, {hubs, cliques[0], cliques[1], cliques[2]}),
                             "9.2", std::nullopt});
  std::vector<std::vector<Vertex>> three;
  for (std::size_t h = 0; h < hubs.size(); ++h) {
    auto block = cliques[h];
    block.push_back(hubs[h]);
    three.push_back(block);
  }
  inst.partitions.push_back({"three", Partition::from_blocks(18, three), "12", std::nullopt});
  return inst;
}

// Standard karate club edge list (1-based).
extern const std::vector<Edge> kZacharyEdges;

NamedInstance zachary() {
  NamedInstance inst{"zachary", Graph(34, kZacharyEdges), {}};

  auto rest = [](std::vector<std::vector<Vertex>> blocks) {
    std::vector<bool> used(35, false);
    for (const auto& b : blocks) {
      for (Vertex v : b) used[v] = true;
    }
    std::vector<Vertex> last;
    for (Vertex v = 1; v <= 34; ++v) {
      if (!used[v]) last.push_back(v);
    }
    blocks.push_back(last);
    return Partition::from_blocks(34, blocks);
  };
  const std::vector<Vertex> squares{1, 2, 3, 4, 5, 6, 7, 8, 11, 12, 13, 14, 17, 18, 20, 22};
  const std::vector<Vertex> dark_squares{5, 6, 7, 11, 17};
  const std::vector<Vertex> white_squares{1, 2, 3, 4, 8, 12, 13, 14, 18, 20, 22};

  inst.partitions.push_back({"m2", rest({squares}), "6.83333", "0.371466"});
  inst.partitions.push_back({"m3", rest({{1, 2, 3, 4, 8, 10, 12, 13, 14, 18, 20, 22}, {5, 6, 7, 11, 17}}),
                             "7.8451", "0.402038"});
  inst.partitions.push_back({"m4_optimal", rest({dark_squares, white_squares, {25, 26, 29, 32}}),
                             "7.54481", "0.415105"});
  inst.partitions.push_back({"m4_authors", rest({dark_squares, white_squares, {24, 25, 26, 28, 29, 32}}),
                             "7.50909", "0.41979"});
  return inst;
}

}  // namespace mdnet
