#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "saba/adversary.hpp"
#include "saba/digraph.hpp"
#include "saba/protocol.hpp"

namespace saba {

enum class Mode { Sync, Async };

struct ScenarioConfig {
  std::string name = "scenario";
  std::optional<Digraph> graph;
  int f = 0;
  int n_bar = 0;  // 0: defaults to N
  std::map<int, double> initial_values;
  Interval safe_interval{};
  std::map<int, double> epsilon;  // per node; missing nodes get epsilon_default
  double epsilon_default = 0.0;
  std::map<int, AdversaryStrategy> adversaries;
  Mode mode = Mode::Sync;
  int k_bar = 1;
  int tau_bar = 0;
  int k_max = 0;  // 0: 2N-1 (sync) or (2N-1)(k_bar+tau_bar) (async)
  std::uint64_t seed = 1;
  PhiMode phi_mode = PhiMode::IncludeAll;
  std::optional<double> expected_average;
  // async overrides; nodes absent from update_rounds get seeded draws
  std::map<int, std::vector<int>> update_rounds;
  std::optional<int> delay_default;
  std::map<std::pair<int, int>, int> edge_delays;  // (sender, receiver) -> delay

  int node_count() const;
  int effective_n_bar() const;
  int effective_k_max() const;
  double node_epsilon(int i) const;
  NodeSubset adversary_set() const;
  NodeSubset regular_set() const;
  double default_expected_average() const;  // mean of regular initials

  /// Field-by-field diagnostics; empty when the scenario is runnable.
  std::vector<std::string> validate() const;
};

struct NodeRound {
  double x = 0.0;
  int lambda = 0;
  std::vector<int> newly_accepted;
  std::vector<int> newly_suspected;
  bool updated = false;
};

struct MessageRecord {
  int sent_round = 0;
  int delivered_round = 0;
  int sender = 0;
  int receiver = 0;
};

struct SimulationTrace {
  std::string scenario_name;
  Mode mode = Mode::Sync;
  int node_count = 0;
  int k_max = 0;
  int f = 0;
  std::set<int> adversaries;
  bool f_local_admissible = true;
  std::optional<double> expected_average;
  std::vector<std::map<int, NodeRound>> rounds;  // index = round 0..k_max
  std::vector<MessageRecord> messages;
  std::map<int, std::optional<int>> retrieval_round;  // regular nodes
  std::map<int, double> final_x;                      // all nodes
  std::map<int, NodeState> final_states;              // regular + shadows
};

SimulationTrace run_sync(const ScenarioConfig& cfg);
SimulationTrace run_async(const ScenarioConfig& cfg);

/// |final x_i - expected| per regular node.
std::map<int, double> consensus_error(const SimulationTrace& trace, double expected);

/// First round each regular node held every regular label; nullopt if never.
std::map<int, std::optional<int>> retrieval_rounds(const SimulationTrace& trace);

// CSV / summary rendering. Column orders are fixed:
//   trace:    round,node,role,x,lambda,accepted_labels,suspected,updated_this_round
//   messages: sent_round,delivered_round,sender,receiver
std::string trace_csv(const SimulationTrace& trace);
std::string message_csv(const SimulationTrace& trace);
std::string summary_text(const SimulationTrace& trace);

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double v);

}  // namespace saba
