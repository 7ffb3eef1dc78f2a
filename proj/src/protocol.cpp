#include "saba/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace saba {

MemoryVector::MemoryVector(int n_bar) {
  if (n_bar < 1) throw std::domain_error("memory size must be positive");
  entries_.resize(n_bar);
}

void MemoryVector::check_label(int label) const {
  if (label < 1 || label > size()) {
    throw std::domain_error("memory label out of range: " + std::to_string(label));
  }
}

bool MemoryVector::has(int label) const {
  check_label(label);
  return entries_[label - 1].has_value();
}

std::optional<double> MemoryVector::get(int label) const {
  check_label(label);
  return entries_[label - 1];
}

void MemoryVector::set(int label, double value) {
  check_label(label);
  entries_[label - 1] = value;
}

void MemoryVector::clear(int label) {
  check_label(label);
  entries_[label - 1].reset();
}

int MemoryVector::occupied_count() const {
  int count = 0;
  for (const auto& e : entries_) {
    if (e) ++count;
  }
  return count;
}

std::vector<int> MemoryVector::occupied_labels() const {
  std::vector<int> labels;
  for (int i = 0; i < size(); ++i) {
    if (entries_[i]) labels.push_back(i + 1);
  }
  return labels;
}

NodeState::NodeState(int id, double x0, int n_bar, double epsilon,
                     Interval safe_interval, PhiMode phi_mode)
    : id_(id),
      x_(x0),
      memory_(n_bar),
      epsilon_(epsilon),
      safe_interval_(safe_interval),
      phi_mode_(phi_mode) {
  if (id < 1 || id > n_bar) throw std::domain_error("node id exceeds memory bound");
  if (epsilon < 0.0 || epsilon >= 1.0) {
    throw std::domain_error("filter gain must lie in [0, 1)");
  }
  memory_.set(id_, x0);
  accepted_rounds_[id_] = 0;
}

MemoryVector NodeState::initial_broadcast() const {
  MemoryVector out(memory_.size());
  out.set(id_, *memory_.get(id_));
  return out;
}

void NodeState::note_history(const InboundMessage& msg) {
  auto& per_label = history_[msg.sender];
  for (int label : msg.payload.occupied_labels()) {
    auto& values = per_label[label];
    const double v = *msg.payload.get(label);
    if (std::find(values.begin(), values.end(), v) == values.end()) {
      values.push_back(v);
    }
  }
}

std::optional<int> NodeState::receive_direct(const InboundMessage& msg, int round) {
  note_history(msg);
  const int label = msg.sender;
  if (label < 1 || label > memory_.size() || label > msg.payload.size()) {
    return std::nullopt;
  }
  auto own = msg.payload.get(label);
  if (!own) return std::nullopt;
  if (!safe_interval_.contains(*own)) {
    suspected_.insert(msg.sender);
    return std::nullopt;
  }
  if (memory_.has(label)) return std::nullopt;  // duplicate: keep first write
  memory_.set(label, *own);
  accepted_rounds_[label] = round;
  return label;
}

std::vector<int> NodeState::accept_by_vote(const std::vector<InboundMessage>& inbox,
                                           int f, int round) {
  for (const auto& msg : inbox) note_history(msg);
  std::vector<int> newly_accepted;
  for (int label = 1; label <= memory_.size(); ++label) {
    if (label == id_ || memory_.has(label) || poisoned_.count(label)) continue;
    // value -> distinct eligible senders carrying it
    std::map<double, std::set<int>> tally;
    for (const auto& msg : inbox) {
      if (suspected_.count(msg.sender) || label > msg.payload.size()) continue;
      auto value = msg.payload.get(label);
      if (value) tally[*value].insert(msg.sender);
    }
    std::vector<double> quorum_values;
    for (const auto& [value, senders] : tally) {
      if (static_cast<int>(senders.size()) >= f + 1) quorum_values.push_back(value);
    }
    if (quorum_values.size() == 1) {
      memory_.set(label, quorum_values.front());
      accepted_rounds_[label] = round;
      newly_accepted.push_back(label);
    } else if (quorum_values.size() > 1) {
      // conflicting quorums: only an equivocating source can cause this
      poisoned_.insert(label);
      if (label != id_) suspected_.insert(label);
    }
  }
  return newly_accepted;
}

std::vector<int> NodeState::detect_adversaries(const std::vector<InboundMessage>& inbox,
                                               int /*f*/) {
  std::set<int> before = suspected_;
  for (const auto& msg : inbox) {
    // (a) contradicting an accepted entry
    for (int label : msg.payload.occupied_labels()) {
      if (label > memory_.size() || !memory_.has(label)) continue;
      if (*msg.payload.get(label) != *memory_.get(label)) {
        suspected_.insert(msg.sender);
        break;
      }
    }
    // (c) own value outside the safe interval
    if (msg.sender >= 1 && msg.sender <= msg.payload.size()) {
      auto own = msg.payload.get(msg.sender);
      if (own && !safe_interval_.contains(*own)) suspected_.insert(msg.sender);
    }
  }
  // (b) the same sender produced two distinct values for one label
  for (const auto& [sender, labels] : history_) {
    for (const auto& [label, values] : labels) {
      if (values.size() >= 2) {
        suspected_.insert(sender);
        break;
      }
    }
  }
  suspected_.erase(id_);
  std::vector<int> newly;
  for (int s : suspected_) {
    if (!before.count(s)) newly.push_back(s);
  }
  return newly;
}

double NodeState::phi() const {
  double sum = 0.0;
  int count = 0;
  for (int label : memory_.occupied_labels()) {
    if (phi_mode_ == PhiMode::ExcludeDetected && suspected_.count(label)) continue;
    sum += *memory_.get(label);
    ++count;
  }
  if (count == 0) throw std::logic_error("phi over empty memory");
  return sum / count;
}

void NodeState::update_sync() { x_ = epsilon_ * x_ + (1.0 - epsilon_) * phi(); }

void NodeState::update_async(int round, int last_update_round) {
  if (last_update_round >= round) {
    throw std::domain_error("asynchronous update rounds must increase");
  }
  update_sync();  // x_ still holds the value from the previous update round
}

bool NodeState::retrieval_complete(const NodeSubset& regular_labels) const {
  for (int label : regular_labels) {
    if (label > memory_.size() || !memory_.has(label)) return false;
  }
  return true;
}

}  // namespace saba
