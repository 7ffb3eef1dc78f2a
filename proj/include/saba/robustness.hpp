#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "saba/digraph.hpp"

namespace saba {

/// Counts the basic incoming-edge tests a checker performs. One test =
/// one (candidate node, potential in-neighbor) edge probe. With early exit
/// disabled the strong-robustness count depends only on N.
struct OpCounter {
  std::uint64_t tests = 0;
  bool early_exit_enabled = true;
};

enum class QueryKind {
  RReachable,
  RRobust,
  StronglyRRobust,
  StronglyRRobustWrt,
  FResilient,
};

std::string to_string(QueryKind kind);

/// Outcome of a robustness query. When the verdict is false, witness_sets
/// (plus witness_source for f-resiliency) pin down a concrete violation:
///   r-robust            -> {S1, S2}, a disjoint pair with neither r-reachable
///   strongly r-robust   -> {S}, a subset with no qualifying member
///   strongly r-robust wrt -> {C}, a non-r-reachable subset outside s
///   f-resilient         -> source s plus {A, M} of the failing partition
struct RobustnessReport {
  QueryKind kind;
  int parameter = 0;  // r, or f for FResilient
  std::optional<NodeSubset> wrt_set;
  bool verdict = false;
  std::vector<NodeSubset> witness_sets;
  std::optional<int> witness_source;
  OpCounter counter;
};

/// Report rendering used by the CLI: kind/params/verdict/witness/
/// tests_counted/predicted_tests, one field per line.
std::string format_report(const RobustnessReport& report,
                          std::optional<std::uint64_t> predicted_tests);

enum class ConnectivityCategory { C0, C1, C2, C3 };
std::string to_string(ConnectivityCategory c);

bool is_r_reachable(const Digraph& g, const NodeSubset& s, int r);

RobustnessReport is_r_robust(const Digraph& g, int r, bool audit = false);
RobustnessReport is_strongly_r_robust(const Digraph& g, int r, bool audit = false);
RobustnessReport is_strongly_r_robust_wrt(const Digraph& g, const NodeSubset& s,
                                          int r, bool audit = false);
RobustnessReport is_f_resilient(const Digraph& g, int f, bool audit = false);

ConnectivityCategory connectivity_category(const Digraph& g);

/// Maximum number of internally node-disjoint directed paths from i to j
/// (unit-capacity node-splitting max flow); a direct edge counts as one path.
int disjoint_paths(const Digraph& g, int i, int j);

/// Minimum number of nodes whose removal renders a strongly connected graph
/// non-strong or trivial; N-1 when every ordered pair is adjacent.
int strong_connectivity(const Digraph& g);

/// Largest r for which the graph is strongly r-robust; 0 if none.
int max_strong_robustness(const Digraph& g);

// Predicted audit-mode test counts: direct summations
//   alg3: sum_{xi=1..N} C(N,xi) * (N-xi) * xi        (= N(N-1)2^{N-2})
//   alg4: N * sum_xi C(N-1,xi) * sum_eta C(N-xi-1,eta) * eta * (N-eta)
std::uint64_t predicted_ops_alg3(int n);
std::uint64_t predicted_ops_alg4(int n);

}  // namespace saba
