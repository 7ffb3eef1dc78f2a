#include "saba/robustness.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>

namespace saba {

namespace {

// Visits every nonempty subset of `elems` (which must be ascending) in
// canonical order: increasing cardinality, then lexicographic member list.
// The visitor receives the subset as a label bitmask and returns false to
// abort the whole enumeration.
template <typename Fn>
void for_each_subset_canonical(const std::vector<int>& elems, Fn&& fn) {
  const int m = static_cast<int>(elems.size());
  std::vector<int> idx;
  for (int k = 1; k <= m; ++k) {
    idx.resize(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::uint64_t mask = 0;
      for (int i : idx) mask |= std::uint64_t{1} << (elems[i] - 1);
      if (!fn(mask, k)) return;
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == m - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
}

std::vector<int> all_nodes(const Digraph& g) {
  std::vector<int> v(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) v[i] = i + 1;
  return v;
}

int ceil_half(int n) { return (n + 1) / 2; }

void require_checker_size(const Digraph& g) {
  if (g.node_count() > 62) {
    throw std::domain_error("exhaustive checkers support at most 62 nodes");
  }
}

std::string set_to_string(const NodeSubset& s) {
  std::string out = "{";
  bool first = true;
  for (int v : s) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

// BFS reachability over out-edges; returns bitmask of nodes reachable from
// start (start included).
std::uint64_t reachable_set(const Digraph& g, int start) {
  std::uint64_t seen = std::uint64_t{1} << (start - 1);
  std::deque<int> queue{start};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.out_neighbor_list(v)) {
      std::uint64_t bit = std::uint64_t{1} << (w - 1);
      if (!(seen & bit)) {
        seen |= bit;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

std::string to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::RReachable: return "r-reachable";
    case QueryKind::RRobust: return "robust";
    case QueryKind::StronglyRRobust: return "strong-robust";
    case QueryKind::StronglyRRobustWrt: return "strong-robust-wrt";
    case QueryKind::FResilient: return "resilient";
  }
  return "?";
}

std::string to_string(ConnectivityCategory c) {
  switch (c) {
    case ConnectivityCategory::C0: return "C0";
    case ConnectivityCategory::C1: return "C1";
    case ConnectivityCategory::C2: return "C2";
    case ConnectivityCategory::C3: return "C3";
  }
  return "?";
}

bool is_r_reachable(const Digraph& g, const NodeSubset& s, int r) {
  if (s.empty()) throw std::domain_error("r-reachability of an empty subset");
  if (s.parent_size() != g.node_count()) {
    throw std::domain_error("subset does not index this graph");
  }
  if (r < 1) throw std::domain_error("r must be at least 1");
  require_checker_size(g);
  const std::uint64_t smask = s.mask();
  for (int i : s) {
    if (std::popcount(g.in_mask(i) & ~smask) >= r) return true;
  }
  return false;
}

RobustnessReport is_r_robust(const Digraph& g, int r, bool audit) {
  const int n = g.node_count();
  if (n < 2) throw std::domain_error("r-robustness needs at least 2 nodes");
  if (r < 1 || r > ceil_half(n)) {
    throw std::domain_error("r out of range [1, ceil(N/2)]");
  }
  if (n > 24) {
    throw std::domain_error("r-robustness pair enumeration supports at most 24 nodes");
  }
  RobustnessReport report{QueryKind::RRobust, r, std::nullopt, true, {}, std::nullopt,
                          OpCounter{0, !audit}};
  // memoized r-reachability per subset mask; counter logs only real scans
  std::vector<signed char> memo(std::uint64_t{1} << n, -1);
  auto reachable = [&](std::uint64_t mask, int size) -> bool {
    signed char& slot = memo[mask];
    if (slot >= 0) return slot != 0;
    bool found = false;
    for (int i = 1; i <= n; ++i) {
      if (!((mask >> (i - 1)) & 1)) continue;
      report.counter.tests += static_cast<std::uint64_t>(n - size);
      if (std::popcount(g.in_mask(i) & ~mask) >= r) {
        found = true;
        if (report.counter.early_exit_enabled) break;
      }
    }
    slot = found ? 1 : 0;
    return found;
  };
  const std::vector<int> nodes = all_nodes(g);
  bool done = false;
  for_each_subset_canonical(nodes, [&](std::uint64_t s1, int size1) {
    if (reachable(s1, size1)) return true;
    std::vector<int> rest;
    for (int v : nodes) {
      if (!((s1 >> (v - 1)) & 1)) rest.push_back(v);
    }
    for_each_subset_canonical(rest, [&](std::uint64_t s2, int size2) {
      if (reachable(s2, size2)) return true;
      report.verdict = false;
      if (report.witness_sets.empty()) {
        report.witness_sets = {NodeSubset::from_mask(s1, n),
                               NodeSubset::from_mask(s2, n)};
      }
      done = true;
      return false;
    });
    return !done;
  });
  return report;
}

RobustnessReport is_strongly_r_robust(const Digraph& g, int r, bool audit) {
  const int n = g.node_count();
  if (r < 1 || r > ceil_half(n)) {
    throw std::domain_error("r out of range [1, ceil(N/2)]");
  }
  require_checker_size(g);
  RobustnessReport report{QueryKind::StronglyRRobust, r, std::nullopt, true, {},
                          std::nullopt, OpCounter{0, !audit}};
  const std::vector<int> nodes = all_nodes(g);
  for_each_subset_canonical(nodes, [&](std::uint64_t smask, int size) {
    const int outside = n - size;
    bool ok = false;
    for (int i : nodes) {
      if (!((smask >> (i - 1)) & 1)) continue;
      report.counter.tests += static_cast<std::uint64_t>(outside);
      const int outside_in = std::popcount(g.in_mask(i) & ~smask);
      if (outside_in >= r || outside_in == outside) {
        ok = true;
        if (report.counter.early_exit_enabled) break;
      }
    }
    if (!ok) {
      report.verdict = false;
      if (report.witness_sets.empty()) {
        report.witness_sets = {NodeSubset::from_mask(smask, n)};
      }
      if (report.counter.early_exit_enabled) return false;
    }
    return true;
  });
  return report;
}

RobustnessReport is_strongly_r_robust_wrt(const Digraph& g, const NodeSubset& s,
                                          int r, bool audit) {
  const int n = g.node_count();
  if (s.empty()) throw std::domain_error("reference set must be nonempty");
  if (s.parent_size() != n) throw std::domain_error("subset does not index this graph");
  if (r < 1) throw std::domain_error("r must be at least 1");
  require_checker_size(g);
  RobustnessReport report{QueryKind::StronglyRRobustWrt, r, s, true, {}, std::nullopt,
                          OpCounter{0, !audit}};
  std::vector<int> rest;
  for (int v = 1; v <= n; ++v) {
    if (!s.contains(v)) rest.push_back(v);
  }
  for_each_subset_canonical(rest, [&](std::uint64_t cmask, int size) {
    bool found = false;
    for (int i : rest) {
      if (!((cmask >> (i - 1)) & 1)) continue;
      report.counter.tests += static_cast<std::uint64_t>(n - size);
      if (std::popcount(g.in_mask(i) & ~cmask) >= r) {
        found = true;
        if (report.counter.early_exit_enabled) break;
      }
    }
    if (!found) {
      report.verdict = false;
      if (report.witness_sets.empty()) {
        report.witness_sets = {NodeSubset::from_mask(cmask, n)};
      }
      if (report.counter.early_exit_enabled) return false;
    }
    return true;
  });
  return report;
}

RobustnessReport is_f_resilient(const Digraph& g, int f, bool audit) {
  const int n = g.node_count();
  if (f < 1) throw std::domain_error("f must be at least 1");
  if (n < 3) throw std::domain_error("f-resiliency check needs at least 3 nodes");
  require_checker_size(g);
  RobustnessReport report{QueryKind::FResilient, f, std::nullopt, true, {},
                          std::nullopt, OpCounter{0, !audit}};
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0}
                                       : (std::uint64_t{1} << n) - 1;
  bool stop = false;
  for (int s = 1; s <= n && !stop; ++s) {
    const std::uint64_t sbit = std::uint64_t{1} << (s - 1);
    std::vector<int> rest;
    for (int v = 1; v <= n; ++v) {
      if (v != s) rest.push_back(v);
    }
    for_each_subset_canonical(rest, [&](std::uint64_t amask, int) {
      std::vector<int> remain;
      for (int v : rest) {
        if (!((amask >> (v - 1)) & 1)) remain.push_back(v);
      }
      if (remain.empty()) return true;
      for_each_subset_canonical(remain, [&](std::uint64_t mmask, int msize) {
        const std::uint64_t lmask = full & ~amask & ~mmask;  // s is in L
        // A partition is a genuine violation only when A is a plausible
        // f-local adversary set for every member of M and still no member
        // can be convinced (f+1 in-neighbors in L or a direct edge from s).
        bool satisfied = false;
        for (int i : remain) {
          if (!((mmask >> (i - 1)) & 1)) continue;
          report.counter.tests += static_cast<std::uint64_t>(n - msize);
          const std::uint64_t in = g.in_mask(i);
          const bool over_attacked = std::popcount(in & amask) > f;
          const bool convincible =
              std::popcount(in & lmask) >= f + 1 || (in & sbit) != 0;
          if (over_attacked || convincible) {
            satisfied = true;
            if (report.counter.early_exit_enabled) break;
          }
        }
        if (!satisfied) {
          report.verdict = false;
          if (report.witness_sets.empty()) {
            report.witness_sets = {NodeSubset::from_mask(amask, n),
                                   NodeSubset::from_mask(mmask, n)};
            report.witness_source = s;
          }
          if (report.counter.early_exit_enabled) {
            stop = true;
            return false;
          }
        }
        return true;
      });
      return !stop;
    });
  }
  return report;
}

ConnectivityCategory connectivity_category(const Digraph& g) {
  const int n = g.node_count();
  require_checker_size(g);
  std::vector<std::uint64_t> reach(n + 1);
  for (int i = 1; i <= n; ++i) reach[i] = reachable_set(g, i);
  bool strong = true;
  bool unilateral = true;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const bool ij = (reach[i] >> (j - 1)) & 1;
      const bool ji = (reach[j] >> (i - 1)) & 1;
      strong = strong && ij && ji;
      unilateral = unilateral && (ij || ji);
    }
  }
  if (strong) return ConnectivityCategory::C3;
  if (unilateral) return ConnectivityCategory::C2;
  // underlying undirected connectivity
  std::uint64_t seen = 1;
  std::deque<int> queue{1};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    auto visit = [&](int w) {
      std::uint64_t bit = std::uint64_t{1} << (w - 1);
      if (!(seen & bit)) {
        seen |= bit;
        queue.push_back(w);
      }
    };
    for (int w : g.out_neighbor_list(v)) visit(w);
    for (int w : g.in_neighbor_list(v)) visit(w);
  }
  const std::uint64_t full = (n == 64) ? ~std::uint64_t{0}
                                       : (std::uint64_t{1} << n) - 1;
  return seen == full ? ConnectivityCategory::C1 : ConnectivityCategory::C0;
}

namespace {

// Unit-capacity max flow on the node-split network, BFS augmenting paths.
class UnitFlowNetwork {
 public:
  explicit UnitFlowNetwork(int vertex_count) : head_(vertex_count, -1) {}

  void add_edge(int from, int to) {
    to_.push_back(to);
    cap_.push_back(1);
    next_.push_back(head_[from]);
    head_[from] = static_cast<int>(to_.size()) - 1;
    to_.push_back(from);
    cap_.push_back(0);
    next_.push_back(head_[to]);
    head_[to] = static_cast<int>(to_.size()) - 1;
  }

  int max_flow(int source, int sink) {
    int flow = 0;
    while (augment(source, sink)) ++flow;
    return flow;
  }

 private:
  bool augment(int source, int sink) {
    std::vector<int> via(head_.size(), -1);
    std::vector<char> seen(head_.size(), 0);
    std::deque<int> queue{source};
    seen[source] = 1;
    while (!queue.empty() && !seen[sink]) {
      int v = queue.front();
      queue.pop_front();
      for (int e = head_[v]; e != -1; e = next_[e]) {
        if (cap_[e] > 0 && !seen[to_[e]]) {
          seen[to_[e]] = 1;
          via[to_[e]] = e;
          queue.push_back(to_[e]);
        }
      }
    }
    if (!seen[sink]) return false;
    for (int v = sink; v != source;) {
      int e = via[v];
      cap_[e] -= 1;
      cap_[e ^ 1] += 1;
      v = to_[e ^ 1];
    }
    return true;
  }

  std::vector<int> head_;
  std::vector<int> to_;
  std::vector<int> cap_;
  std::vector<int> next_;
};

}  // namespace

int disjoint_paths(const Digraph& g, int i, int j) {
  if (i == j) throw std::domain_error("disjoint paths need distinct endpoints");
  const int n = g.node_count();
  auto in_id = [](int v) { return 2 * (v - 1); };
  auto out_id = [](int v) { return 2 * (v - 1) + 1; };
  UnitFlowNetwork net(2 * n);
  for (int v = 1; v <= n; ++v) net.add_edge(in_id(v), out_id(v));
  for (const auto& [from, to] : g.edges()) net.add_edge(out_id(from), in_id(to));
  return net.max_flow(out_id(i), in_id(j));
}

int strong_connectivity(const Digraph& g) {
  if (connectivity_category(g) != ConnectivityCategory::C3) {
    throw std::domain_error("strong connectivity is defined for strongly connected graphs");
  }
  const int n = g.node_count();
  int best = n - 1;  // every ordered pair adjacent: only removal to triviality
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i != j && !g.has_edge(i, j)) {
        best = std::min(best, disjoint_paths(g, i, j));
      }
    }
  }
  return best;
}

int max_strong_robustness(const Digraph& g) {
  for (int r = ceil_half(g.node_count()); r >= 1; --r) {
    if (is_strongly_r_robust(g, r).verdict) return r;
  }
  return 0;
}

namespace {

std::uint64_t checked_u64(unsigned __int128 v, const char* what) {
  if (v > static_cast<unsigned __int128>(UINT64_MAX)) {
    throw std::domain_error(std::string(what) + ": count overflows 64 bits");
  }
  return static_cast<std::uint64_t>(v);
}

unsigned __int128 binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return result;
}

}  // namespace

std::uint64_t predicted_ops_alg3(int n) {
  if (n < 1) throw std::domain_error("n must be at least 1");
  if (n > 48) throw std::domain_error("n too large for exact 64-bit count");
  unsigned __int128 total = 0;
  for (int xi = 1; xi <= n; ++xi) {
    total += binomial(n, xi) * static_cast<unsigned>(n - xi) * static_cast<unsigned>(xi);
  }
  return checked_u64(total, "predicted_ops_alg3");
}

std::uint64_t predicted_ops_alg4(int n) {
  if (n < 3) throw std::domain_error("n must be at least 3");
  if (n > 30) throw std::domain_error("n too large for exact 64-bit count");
  unsigned __int128 total = 0;
  for (int xi = 1; xi <= n - 1; ++xi) {
    unsigned __int128 inner = 0;
    for (int eta = 1; eta <= n - xi - 1; ++eta) {
      inner += binomial(n - xi - 1, eta) * static_cast<unsigned>(eta) *
               static_cast<unsigned>(n - eta);
    }
    total += binomial(n - 1, xi) * inner;
  }
  total *= static_cast<unsigned>(n);
  return checked_u64(total, "predicted_ops_alg4");
}

std::string format_report(const RobustnessReport& report,
                          std::optional<std::uint64_t> predicted_tests) {
  std::ostringstream out;
  out << "kind: " << to_string(report.kind) << "\n";
  out << "params: " << (report.kind == QueryKind::FResilient ? "f=" : "r=")
      << report.parameter;
  if (report.wrt_set) out << " set=" << set_to_string(*report.wrt_set);
  out << "\n";
  out << "verdict: " << (report.verdict ? "true" : "false") << "\n";
  out << "witness: ";
  if (report.verdict) {
    out << "none";
  } else if (report.kind == QueryKind::FResilient) {
    out << "s=" << *report.witness_source
        << " A=" << set_to_string(report.witness_sets[0])
        << " M=" << set_to_string(report.witness_sets[1]);
  } else if (report.witness_sets.size() == 2) {
    out << "S1=" << set_to_string(report.witness_sets[0])
        << " S2=" << set_to_string(report.witness_sets[1]);
  } else {
    out << (report.kind == QueryKind::StronglyRRobustWrt ? "C=" : "S=")
        << set_to_string(report.witness_sets[0]);
  }
  out << "\n";
  out << "tests_counted: " << report.counter.tests << "\n";
  out << "predicted_tests: ";
  if (predicted_tests) {
    out << *predicted_tests;
  } else {
    out << "n/a";
  }
  out << "\n";
  return out.str();
}

}  // namespace saba
