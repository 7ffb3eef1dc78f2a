#include "saba/digraph.hpp"

#include <algorithm>
#include <sstream>

namespace saba {

Digraph::Digraph(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ < 1) {
    throw std::domain_error("digraph needs at least one node");
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (const auto& [from, to] : edges_) {
    if (from < 1 || from > node_count_ || to < 1 || to > node_count_) {
      throw std::domain_error("edge endpoint out of range: (" +
                              std::to_string(from) + "," + std::to_string(to) + ")");
    }
    if (from == to) {
      throw std::domain_error("self-loop forbidden: node " + std::to_string(from));
    }
  }
  in_adj_.assign(node_count_ + 1, {});
  out_adj_.assign(node_count_ + 1, {});
  for (const auto& [from, to] : edges_) {
    out_adj_[from].push_back(to);
    in_adj_[to].push_back(from);
  }
  for (int i = 1; i <= node_count_; ++i) {
    std::sort(in_adj_[i].begin(), in_adj_[i].end());
    std::sort(out_adj_[i].begin(), out_adj_[i].end());
  }
  if (node_count_ <= 64) {
    in_mask_.assign(node_count_ + 1, 0);
    for (const auto& [from, to] : edges_) {
      in_mask_[to] |= std::uint64_t{1} << (from - 1);
    }
  }
}

void Digraph::check_node(int i) const {
  if (i < 1 || i > node_count_) {
    throw std::domain_error("node label out of range: " + std::to_string(i));
  }
}

bool Digraph::has_edge(int from, int to) const {
  check_node(from);
  check_node(to);
  if (!in_mask_.empty()) {
    return (in_mask_[to] >> (from - 1)) & 1;
  }
  const auto& outs = out_adj_[from];
  return std::binary_search(outs.begin(), outs.end(), to);
}

const std::vector<int>& Digraph::in_neighbor_list(int i) const {
  check_node(i);
  return in_adj_[i];
}

const std::vector<int>& Digraph::out_neighbor_list(int i) const {
  check_node(i);
  return out_adj_[i];
}

std::uint64_t Digraph::in_mask(int i) const {
  check_node(i);
  if (in_mask_.empty()) {
    throw std::domain_error("in_mask requires node_count <= 64");
  }
  return in_mask_[i];
}

Digraph Digraph::remove_edge(int from, int to, bool bidirectional) const {
  if (!has_edge(from, to) || (bidirectional && !has_edge(to, from))) {
    throw std::domain_error("cannot remove missing edge (" + std::to_string(from) +
                            "," + std::to_string(to) + ")");
  }
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e == Edge{from, to}) continue;
    if (bidirectional && e == Edge{to, from}) continue;
    kept.push_back(e);
  }
  return Digraph(node_count_, std::move(kept));
}

NodeSubset::NodeSubset(std::vector<int> members, int parent_size)
    : members_(std::move(members)), parent_size_(parent_size) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (int m : members_) {
    if (m < 1 || m > parent_size_) {
      throw std::domain_error("subset member out of range: " + std::to_string(m));
    }
  }
}

NodeSubset NodeSubset::from_mask(std::uint64_t mask, int parent_size) {
  std::vector<int> members;
  for (int i = 1; i <= parent_size; ++i) {
    if ((mask >> (i - 1)) & 1) members.push_back(i);
  }
  return NodeSubset(std::move(members), parent_size);
}

bool NodeSubset::contains(int label) const {
  return std::binary_search(members_.begin(), members_.end(), label);
}

std::uint64_t NodeSubset::mask() const {
  std::uint64_t m = 0;
  for (int x : members_) m |= std::uint64_t{1} << (x - 1);
  return m;
}

NodeSubset in_neighbors(const Digraph& g, int i) {
  return NodeSubset(g.in_neighbor_list(i), g.node_count());
}

NodeSubset out_neighbors(const Digraph& g, int i) {
  return NodeSubset(g.out_neighbor_list(i), g.node_count());
}

Digraph complete(int n) {
  if (n < 1) throw std::domain_error("complete graph needs n >= 1");
  std::vector<Digraph::Edge> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j) edges.emplace_back(i, j);
    }
  }
  return Digraph(n, std::move(edges));
}

Digraph wheel(int n, int hub) {
  if (n < 4) throw std::domain_error("wheel graph needs n >= 4");
  if (hub < 1 || hub > n) throw std::domain_error("wheel hub out of range");
  std::vector<int> rim;
  for (int i = 1; i <= n; ++i) {
    if (i != hub) rim.push_back(i);
  }
  std::vector<Digraph::Edge> edges;
  const int m = static_cast<int>(rim.size());
  for (int k = 0; k < m; ++k) {
    int a = rim[k];
    int b = rim[(k + 1) % m];
    edges.emplace_back(a, b);
    edges.emplace_back(b, a);
  }
  for (int v : rim) {
    edges.emplace_back(hub, v);
    edges.emplace_back(v, hub);
  }
  return Digraph(n, std::move(edges));
}

Digraph cycle_bidirectional(int n) {
  if (n < 3) throw std::domain_error("cycle needs n >= 3");
  std::vector<Digraph::Edge> edges;
  for (int i = 1; i <= n; ++i) {
    int j = i % n + 1;
    edges.emplace_back(i, j);
    edges.emplace_back(j, i);
  }
  return Digraph(n, std::move(edges));
}

Digraph random_digraph(int n, double edge_prob, Rng& rng) {
  std::vector<Digraph::Edge> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j && rng.chance(edge_prob)) edges.emplace_back(i, j);
    }
  }
  return Digraph(n, std::move(edges));
}

Digraph random_symmetric_digraph(int n, double edge_prob, Rng& rng) {
  std::vector<Digraph::Edge> edges;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (rng.chance(edge_prob)) {
        edges.emplace_back(i, j);
        edges.emplace_back(j, i);
      }
    }
  }
  return Digraph(n, std::move(edges));
}

InducedSubgraph induced_subgraph(const Digraph& g, const NodeSubset& s) {
  if (s.empty()) throw std::domain_error("induced subgraph of empty subset");
  if (s.parent_size() != g.node_count()) {
    throw std::domain_error("subset parent size does not match graph");
  }
  std::map<int, int> old_to_new;
  int next = 1;
  for (int v : s) old_to_new[v] = next++;
  std::vector<Digraph::Edge> edges;
  for (const auto& [from, to] : g.edges()) {
    auto fi = old_to_new.find(from);
    auto ti = old_to_new.find(to);
    if (fi != old_to_new.end() && ti != old_to_new.end()) {
      edges.emplace_back(fi->second, ti->second);
    }
  }
  return InducedSubgraph{Digraph(s.size(), std::move(edges)), std::move(old_to_new)};
}

EdgeListParseError::EdgeListParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Digraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<Digraph::Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "n") {
      if (n != -1) throw EdgeListParseError(line_no, "duplicate header");
      if (!(ls >> n) || n < 1) throw EdgeListParseError(line_no, "bad node count");
    } else if (tag == "e" || tag == "u") {
      if (n == -1) throw EdgeListParseError(line_no, "edge before 'n' header");
      int a, b;
      if (!(ls >> a >> b)) throw EdgeListParseError(line_no, "expected two node labels");
      if (a < 1 || a > n || b < 1 || b > n) {
        throw EdgeListParseError(line_no, "node label out of range");
      }
      if (a == b) throw EdgeListParseError(line_no, "self-loop forbidden");
      edges.emplace_back(a, b);
      if (tag == "u") edges.emplace_back(b, a);
    } else {
      throw EdgeListParseError(line_no, "unknown line tag '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra && extra[0] != '#') {
      throw EdgeListParseError(line_no, "trailing tokens");
    }
  }
  if (n == -1) throw EdgeListParseError(line_no, "missing 'n' header");
  return Digraph(n, std::move(edges));
}

std::string serialize_edge_list(const Digraph& g) {
  std::ostringstream out;
  out << "n " << g.node_count() << "\n";
  for (const auto& [from, to] : g.edges()) {
    out << "e " << from << " " << to << "\n";
  }
  return out.str();
}

}  // namespace saba
