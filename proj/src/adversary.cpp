#include "saba/adversary.hpp"

namespace saba {

namespace {

struct EmitVisitor {
  const MemoryVector& honest;
  int round;
  int neighbor;
  int own_id;

  std::optional<MemoryVector> operator()(const ConstantLie& s) const {
    MemoryVector out = honest;
    if (round >= s.from_round) {
      for (int label : s.target_labels) out.set(label, s.value);
    }
    return out;
  }

  std::optional<MemoryVector> operator()(const SwitchOwn& s) const {
    MemoryVector out = honest;
    out.set(own_id, round < s.switch_round ? s.honest_value : s.new_value);
    return out;
  }

  std::optional<MemoryVector> operator()(const Equivocate& s) const {
    MemoryVector out = honest;
    auto it = s.per_neighbor.find(neighbor);
    if (it != s.per_neighbor.end()) {
      for (const auto& [label, value] : it->second) out.set(label, value);
    }
    return out;
  }

  std::optional<MemoryVector> operator()(const OutOfInterval& s) const {
    MemoryVector out = honest;
    out.set(own_id, s.value);
    return out;
  }

  std::optional<MemoryVector> operator()(const Silent&) const { return std::nullopt; }

  std::optional<MemoryVector> operator()(const Honest&) const { return honest; }
};

}  // namespace

std::optional<MemoryVector> adversary_emit(const AdversaryStrategy& strategy,
                                           const MemoryVector& honest_payload,
                                           int round, int neighbor, int own_id) {
  return std::visit(EmitVisitor{honest_payload, round, neighbor, own_id}, strategy);
}

bool is_f_local_admissible(const Digraph& g, const NodeSubset& adversaries, int f) {
  for (int i = 1; i <= g.node_count(); ++i) {
    if (adversaries.contains(i)) continue;
    int count = 0;
    for (int j : g.in_neighbor_list(i)) {
      if (adversaries.contains(j)) ++count;
    }
    if (count > f) return false;
  }
  return true;
}

bool is_f_total_admissible(const NodeSubset& adversaries, int f) {
  return adversaries.size() <= f;
}

}  // namespace saba
