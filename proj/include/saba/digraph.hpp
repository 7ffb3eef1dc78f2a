#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "saba/random.hpp"

namespace saba {

/// Immutable directed graph on nodes labeled 1..N. An edge (j,i) means
/// "j transmits to i". No self-loops. Edge iteration is sorted by
/// (source, dest) so every traversal is reproducible.
class Digraph {
 public:
  using Edge = std::pair<int, int>;

  Digraph(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(int from, int to) const;
  const std::vector<int>& in_neighbor_list(int i) const;
  const std::vector<int>& out_neighbor_list(int i) const;
  int in_degree(int i) const { return static_cast<int>(in_neighbor_list(i).size()); }
  int out_degree(int i) const { return static_cast<int>(out_neighbor_list(i).size()); }

  // bit j-1 set iff (j,i) is an edge; only for graphs with N <= 64
  std::uint64_t in_mask(int i) const;

  Digraph remove_edge(int from, int to, bool bidirectional = false) const;

  bool operator==(const Digraph& other) const {
    return node_count_ == other.node_count_ && edges_ == other.edges_;
  }

 private:
  void check_node(int i) const;

  int node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> in_adj_;
  std::vector<std::vector<int>> out_adj_;
  std::vector<std::uint64_t> in_mask_;  // empty when node_count_ > 64
};

/// A set of node labels inside a graph of `parent_size` nodes.
class NodeSubset {
 public:
  NodeSubset(std::vector<int> members, int parent_size);
  static NodeSubset from_mask(std::uint64_t mask, int parent_size);

  const std::vector<int>& members() const { return members_; }
  int parent_size() const { return parent_size_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool contains(int label) const;
  std::uint64_t mask() const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool operator==(const NodeSubset& other) const {
    return members_ == other.members_ && parent_size_ == other.parent_size_;
  }

 private:
  std::vector<int> members_;  // sorted, unique
  int parent_size_;
};

NodeSubset in_neighbors(const Digraph& g, int i);
NodeSubset out_neighbors(const Digraph& g, int i);

// generators
Digraph complete(int n);
Digraph wheel(int n, int hub);
Digraph cycle_bidirectional(int n);
Digraph random_digraph(int n, double edge_prob, Rng& rng);
Digraph random_symmetric_digraph(int n, double edge_prob, Rng& rng);

struct InducedSubgraph {
  Digraph graph;
  std::map<int, int> old_to_new;
};
InducedSubgraph induced_subgraph(const Digraph& g, const NodeSubset& s);

/// Thrown by parse_edge_list with a 1-based line number.
class EdgeListParseError : public std::runtime_error {
 public:
  EdgeListParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Text format: "n <N>" header, then "e <src> <dst>" (one arc),
// "u <a> <b>" (both arcs), "#" comment lines.
Digraph parse_edge_list(const std::string& text);
std::string serialize_edge_list(const Digraph& g);

}  // namespace saba
