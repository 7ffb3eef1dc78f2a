#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "saba/digraph.hpp"

namespace saba {

struct Interval {
  double lo = 0.0;
  double hi = 10.0;
  bool contains(double v) const { return lo <= v && v <= hi; }
};

enum class PhiMode { IncludeAll, ExcludeDetected };

/// Write-once-by-convention store of retrieved initial values, indexed by
/// originating node label 1..n_bar. The protocol layer enforces persistence;
/// adversarial payloads reuse this type with arbitrary contents.
class MemoryVector {
 public:
  explicit MemoryVector(int n_bar);

  int size() const { return static_cast<int>(entries_.size()); }
  bool has(int label) const;
  std::optional<double> get(int label) const;
  void set(int label, double value);
  void clear(int label);
  int occupied_count() const;
  std::vector<int> occupied_labels() const;

  bool operator==(const MemoryVector& other) const { return entries_ == other.entries_; }

 private:
  void check_label(int label) const;
  std::vector<std::optional<double>> entries_;  // index label-1
};

struct InboundMessage {
  int sender = 0;
  MemoryVector payload;
  int sent_round = 0;
  int delay = 0;
};

/// One regular node's full protocol state. Transitions are pure in the
/// sense that they touch nothing but this object; the simulator owns all
/// scheduling and delivery.
class NodeState {
 public:
  NodeState(int id, double x0, int n_bar, double epsilon,
            Interval safe_interval = {}, PhiMode phi_mode = PhiMode::IncludeAll);

  int id() const { return id_; }
  double x() const { return x_; }
  double epsilon() const { return epsilon_; }
  const MemoryVector& memory() const { return memory_; }
  const std::set<int>& suspected() const { return suspected_; }
  const std::set<int>& poisoned() const { return poisoned_; }
  const std::map<int, int>& accepted_rounds() const { return accepted_rounds_; }
  PhiMode phi_mode() const { return phi_mode_; }

  /// Snapshot of the current memory; the payload every out-neighbor gets.
  MemoryVector make_broadcast() const { return memory_; }

  /// Own-entry-only snapshot (the round-0 memory m[0]) for the direct phase.
  MemoryVector initial_broadcast() const;

  /// Direct acceptance of the sender's own initial value. Returns the label
  /// accepted, if any. Late/duplicate directs are ignored; out-of-interval
  /// own values mark the sender suspected and are not stored.
  std::optional<int> receive_direct(const InboundMessage& msg, int round);

  /// f+1 identical-value majority acceptance over the round's inbox (at most
  /// one message per sender). Messages from suspected senders do not vote.
  /// Two distinct values reaching quorum for one label poison that label.
  /// Returns newly accepted labels.
  std::vector<int> accept_by_vote(const std::vector<InboundMessage>& inbox, int f,
                                  int round);

  /// Flags senders that (a) contradict an accepted entry, (b) have sent two
  /// distinct values for one label over time, or (c) claim an own value
  /// outside the safe interval. Returns newly suspected labels.
  std::vector<int> detect_adversaries(const std::vector<InboundMessage>& inbox, int f);

  /// Mean of the filled memory entries; ExcludeDetected drops suspected labels.
  double phi() const;

  void update_sync();
  void update_async(int round, int last_update_round);

  bool retrieval_complete(const NodeSubset& regular_labels) const;

 private:
  void note_history(const InboundMessage& msg);

  int id_;
  double x_;
  MemoryVector memory_;
  double epsilon_;
  Interval safe_interval_;
  PhiMode phi_mode_;
  std::set<int> suspected_;
  std::set<int> poisoned_;
  std::map<int, int> accepted_rounds_;
  // per sender, per label: every distinct value ever read from that sender
  std::map<int, std::map<int, std::vector<double>>> history_;
};

}  // namespace saba
