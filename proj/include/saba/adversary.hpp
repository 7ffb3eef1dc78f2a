#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "saba/digraph.hpp"
#include "saba/protocol.hpp"

namespace saba {

// Behavior scripts for Byzantine nodes. Each transforms the honest payload
// the node would have broadcast; `round` is the sent round (round 0 carries
// the initial memory, the direct-phase packet).

/// Broadcast `value` for every target label from `from_round` on.
struct ConstantLie {
  std::vector<int> target_labels;
  double value = 0.0;
  int from_round = 1;
};

/// Send the own initial honestly, then switch it at `switch_round`.
struct SwitchOwn {
  double honest_value = 0.0;
  double new_value = 0.0;
  int switch_round = 1;
};

/// Different payload overrides per out-neighbor; unmapped neighbors get the
/// honest payload.
struct Equivocate {
  std::map<int, std::map<int, double>> per_neighbor;  // neighbor -> label -> value
};

/// Own initial value outside the safe interval.
struct OutOfInterval {
  double value = 0.0;
};

struct Silent {};
struct Honest {};

using AdversaryStrategy =
    std::variant<ConstantLie, SwitchOwn, Equivocate, OutOfInterval, Silent, Honest>;

/// Payload an adversary sends to `neighbor` at sent round `round`;
/// std::nullopt means no message. `honest_payload` is what a regular node
/// with the adversary's shadow state would broadcast.
std::optional<MemoryVector> adversary_emit(const AdversaryStrategy& strategy,
                                           const MemoryVector& honest_payload,
                                           int round, int neighbor, int own_id);

/// Every regular node has at most f adversarial in-neighbors.
bool is_f_local_admissible(const Digraph& g, const NodeSubset& adversaries, int f);

/// At most f adversarial nodes in total.
bool is_f_total_admissible(const NodeSubset& adversaries, int f);

}  // namespace saba
