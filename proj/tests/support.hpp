#pragma once

// Test-only brute-force oracles, written against the definitions with plain
// set arithmetic and kept independent of the library's bitmask checkers.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "saba/digraph.hpp"
#include "saba/robustness.hpp"

namespace oracle {

using saba::Digraph;

inline std::set<int> in_set(const Digraph& g, int i) {
  const auto& v = g.in_neighbor_list(i);
  return {v.begin(), v.end()};
}

inline std::vector<std::set<int>> nonempty_subsets(const std::vector<int>& elems) {
  std::vector<std::set<int>> out;
  const int m = static_cast<int>(elems.size());
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::set<int> s;
    for (int b = 0; b < m; ++b) {
      if (mask >> b & 1) s.insert(elems[b]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<int> all_nodes(const Digraph& g) {
  std::vector<int> v;
  for (int i = 1; i <= g.node_count(); ++i) v.push_back(i);
  return v;
}

inline bool r_reachable(const Digraph& g, const std::set<int>& s, int r) {
  for (int i : s) {
    std::set<int> outside_in;
    for (int j : in_set(g, i)) {
      if (!s.count(j)) outside_in.insert(j);
    }
    if (static_cast<int>(outside_in.size()) >= r) return true;
  }
  return false;
}

inline bool strongly_r_robust(const Digraph& g, int r) {
  for (const auto& s : nonempty_subsets(all_nodes(g))) {
    if (r_reachable(g, s, r)) continue;
    bool covered = false;
    for (int i : s) {
      bool all_in = true;
      for (int v = 1; v <= g.node_count(); ++v) {
        if (!s.count(v) && !in_set(g, i).count(v)) {
          all_in = false;
          break;
        }
      }
      if (all_in) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

inline bool r_robust(const Digraph& g, int r) {
  const auto subsets = nonempty_subsets(all_nodes(g));
  for (const auto& s1 : subsets) {
    for (const auto& s2 : subsets) {
      bool disjoint = true;
      for (int v : s2) {
        if (s1.count(v)) disjoint = false;
      }
      if (!disjoint) continue;
      if (!r_reachable(g, s1, r) && !r_reachable(g, s2, r)) return false;
    }
  }
  return true;
}

// f-resiliency: partitions (s, A, M, L) where A stays a plausible f-local
// adversary for every node of M must leave some member with f+1 in-neighbors
// in L or a direct edge from the source.
inline bool f_resilient(const Digraph& g, int f) {
  const int n = g.node_count();
  for (int s = 1; s <= n; ++s) {
    std::vector<int> rest;
    for (int v = 1; v <= n; ++v) {
      if (v != s) rest.push_back(v);
    }
    for (const auto& a : nonempty_subsets(rest)) {
      std::vector<int> remain;
      for (int v : rest) {
        if (!a.count(v)) remain.push_back(v);
      }
      for (const auto& m : nonempty_subsets(remain)) {
        std::set<int> l;
        l.insert(s);
        for (int v : remain) {
          if (!m.count(v)) l.insert(v);
        }
        bool plausible = true;
        for (int i : m) {
          std::set<int> from_a;
          for (int j : in_set(g, i)) {
            if (a.count(j)) from_a.insert(j);
          }
          if (static_cast<int>(from_a.size()) > f) plausible = false;
        }
        if (!plausible) continue;
        bool ok = false;
        for (int i : m) {
          std::set<int> from_l;
          for (int j : in_set(g, i)) {
            if (l.count(j)) from_l.insert(j);
          }
          if (static_cast<int>(from_l.size()) >= f + 1 || g.has_edge(s, i)) ok = true;
        }
        if (!ok) return false;
      }
    }
  }
  return true;
}

// literal triple enumeration, eta*(N-eta) tests per (s, A, M)
inline std::uint64_t alg4_test_count(int n) {
  std::uint64_t total = 0;
  std::vector<int> nodes;
  for (int i = 1; i <= n; ++i) nodes.push_back(i);
  for (int s = 1; s <= n; ++s) {
    std::vector<int> rest;
    for (int v : nodes) {
      if (v != s) rest.push_back(v);
    }
    for (const auto& a : nonempty_subsets(rest)) {
      std::vector<int> remain;
      for (int v : rest) {
        if (!a.count(v)) remain.push_back(v);
      }
      for (const auto& m : nonempty_subsets(remain)) {
        total += static_cast<std::uint64_t>(m.size()) *
                 static_cast<std::uint64_t>(n - static_cast<int>(m.size()));
      }
    }
  }
  return total;
}

inline std::uint64_t alg3_test_count(int n) {
  std::vector<int> nodes;
  for (int i = 1; i <= n; ++i) nodes.push_back(i);
  std::uint64_t total = 0;
  for (const auto& s : nonempty_subsets(nodes)) {
    total += static_cast<std::uint64_t>(s.size()) *
             static_cast<std::uint64_t>(n - static_cast<int>(s.size()));
  }
  return total;
}

inline bool strongly_connected(const Digraph& g) {
  return saba::connectivity_category(g) == saba::ConnectivityCategory::C3;
}

// minimum vertex-removal set breaking strong connectivity (or leaving a
// trivial graph); assumes the input is strongly connected
inline int min_breaking_removal(const Digraph& g) {
  const int n = g.node_count();
  std::vector<int> nodes = all_nodes(g);
  for (int k = 1; k <= n - 1; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::set<int> removed;
      for (int i : idx) removed.insert(nodes[i]);
      std::vector<int> kept;
      for (int v : nodes) {
        if (!removed.count(v)) kept.push_back(v);
      }
      if (kept.size() <= 1) return k;  // trivial
      auto sub = saba::induced_subgraph(g, saba::NodeSubset(kept, n));
      if (saba::connectivity_category(sub.graph) != saba::ConnectivityCategory::C3) {
        return k;
      }
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return n - 1;
}

// witness re-validation: the returned sets genuinely violate the definitions
inline bool violates_strong_robustness(const Digraph& g, int r, const std::set<int>& s) {
  if (r_reachable(g, s, r)) return false;
  for (int i : s) {
    bool all_in = true;
    for (int v = 1; v <= g.node_count(); ++v) {
      if (!s.count(v) && !in_set(g, i).count(v)) all_in = false;
    }
    if (all_in) return false;
  }
  return true;
}

inline std::set<int> to_set(const saba::NodeSubset& s) {
  return {s.members().begin(), s.members().end()};
}

inline saba::Digraph fig3_graph() {
  return saba::parse_edge_list(
      "n 6\nu 1 2\nu 1 3\nu 1 4\nu 1 5\nu 1 6\nu 2 3\nu 2 4\nu 2 6\n"
      "u 3 4\nu 3 5\nu 3 6\nu 4 5\n");
}

}  // namespace oracle
