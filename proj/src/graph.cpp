#include "mdnet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mdnet {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

long long parse_label(const std::string& tok, int line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error("line " + std::to_string(line) + ": expected integer, got '" + tok + "'");
  }
  return v;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

}  // namespace

Graph::Graph(Vertex n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw Error("graph must have at least one vertex");
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n_));
  std::set<std::pair<Vertex, Vertex>> seen;
  for (auto& e : edges_) {
    if (e.u == e.v) throw Error("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 1 || e.v > n_) {
      throw Error("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} outside 1.." + std::to_string(n_));
    }
    if (!seen.emplace(e.u, e.v).second) {
      throw Error("duplicate edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    }
    adj[e.u - 1].push_back(e.v);
    adj[e.v - 1].push_back(e.u);
  }
  offsets_.assign(adj.size() + 1, 0);
  for (std::size_t i = 0; i < adj.size(); ++i) {
    std::sort(adj[i].begin(), adj[i].end());
    offsets_[i + 1] = offsets_[i] + adj[i].size();
    adjacency_.insert(adjacency_.end(), adj[i].begin(), adj[i].end());
  }
}

int Graph::max_degree() const {
  int best = 0;
  for (Vertex v = 1; v <= n_; ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<int> canonicalize(std::span<const int> labels) {
  std::map<int, int> relabel;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int label : labels) {
    auto [it, inserted] = relabel.emplace(label, static_cast<int>(relabel.size()) + 1);
    out.push_back(it->second);
  }
  return out;
}

Partition canonicalize(const Partition& p) { return p; }

Partition::Partition(std::vector<int> labels) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 1) throw Error("community label of vertex " + std::to_string(i + 1) + " must be positive");
  }
  assign_ = canonicalize(labels);
  m_ = assign_.empty() ? 0 : *std::max_element(assign_.begin(), assign_.end());
}

std::vector<Vertex> Partition::members(int l) const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < assign_.size(); ++i) {
    if (assign_[i] == l) out.push_back(static_cast<Vertex>(i + 1));
  }
  return out;
}

std::vector<std::vector<Vertex>> Partition::blocks() const {
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(m_));
  for (std::size_t i = 0; i < assign_.size(); ++i) out[assign_[i] - 1].push_back(static_cast<Vertex>(i + 1));
  return out;
}

Partition Partition::from_blocks(Vertex n, const std::vector<std::vector<Vertex>>& blocks) {
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (Vertex v : blocks[b]) {
      if (v < 1 || v > n) throw Error("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
      if (labels[v - 1] != 0) throw Error("vertex " + std::to_string(v) + " listed twice");
      labels[v - 1] = static_cast<int>(b) + 1;
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) throw Error("unassigned vertex " + std::to_string(i + 1));
  }
  return Partition(std::move(labels));
}

Graph load_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  long long declared_n = -1;
  long long max_label = 0;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s.rfind("n=", 0) == 0) {
      declared_n = parse_label(trim(s.substr(2)), line);
      if (declared_n < 1) throw Error("line " + std::to_string(line) + ": n must be positive");
      continue;
    }
    std::istringstream ls(s);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.size() != 2) {
      throw Error("line " + std::to_string(line) + ": expected two vertex labels (weighted input is not supported)");
    }
    long long u = parse_label(tok[0], line);
    long long v = parse_label(tok[1], line);
    if (u < 1 || v < 1) throw Error("line " + std::to_string(line) + ": vertex labels must be positive");
    if (u > 100'000'000 || v > 100'000'000) throw Error("line " + std::to_string(line) + ": vertex label too large");
    if (u == v) throw Error("line " + std::to_string(line) + ": self-loop");
    max_label = std::max({max_label, u, v});
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (declared_n >= 0 && declared_n < max_label) {
    throw Error("header n=" + std::to_string(declared_n) + " smaller than label " + std::to_string(max_label));
  }
  long long n = declared_n >= 0 ? declared_n : max_label;
  if (n < 1) throw Error("empty graph");
  return Graph(static_cast<Vertex>(n), std::move(edges));
}

Graph load_edge_list_file(const std::string& path) {
  auto in = open_or_throw(path);
  return load_edge_list(in);
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << "n=" << g.n() << "\n";
  for (const auto& e : g.edges()) os << e.u << " " << e.v << "\n";
  return os.str();
}

Partition load_partition(std::istream& in, const Graph& g) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<int> labels(static_cast<std::size_t>(g.n()), 0);
  auto place = [&](long long v, long long c, const std::string& where) {
    if (v < 1 || v > g.n()) throw Error(where + "vertex " + std::to_string(v) + " outside 1.." + std::to_string(g.n()));
    if (c < 1 || c > 1'000'000'000) throw Error(where + "community label must be a positive integer");
    if (labels[v - 1] != 0) throw Error(where + "vertex " + std::to_string(v) + " listed twice");
    labels[v - 1] = static_cast<int>(c);
  };

  std::string body = trim(text);
  if (!body.empty() && body[0] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(std::string("invalid JSON partition: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      long long v = parse_label(it.key(), 0);
      if (!it.value().is_number_integer()) throw Error("community of vertex " + it.key() + " must be an integer");
      place(v, it.value().get<long long>(), "");
    }
  } else {
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
      ++line;
      std::string s = trim(raw);
      if (s.empty() || s[0] == '#') continue;
      std::istringstream ls(s);
      std::vector<std::string> tok;
      for (std::string t; ls >> t;) tok.push_back(t);
      std::string where = "line " + std::to_string(line) + ": ";
      if (tok.size() != 2) throw Error(where + "expected 'vertex community'");
      place(parse_label(tok[0], line), parse_label(tok[1], line), where);
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) throw Error("unassigned vertex " + std::to_string(i + 1));
  }
  return Partition(std::move(labels));
}

Partition load_partition_file(const std::string& path, const Graph& g) {
  auto in = open_or_throw(path);
  return load_partition(in, g);
}

std::string to_partition_text(const Partition& p) {
  std::ostringstream os;
  for (Vertex v = 1; v <= p.n(); ++v) os << v << " " << p.community_of(v) << "\n";
  return os.str();
}

}  // namespace mdnet
