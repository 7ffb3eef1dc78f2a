#include "saba/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "saba/random.hpp"

namespace saba {

int ScenarioConfig::node_count() const {
  if (!graph) throw std::domain_error("scenario has no graph");
  return graph->node_count();
}

int ScenarioConfig::effective_n_bar() const {
  return n_bar > 0 ? n_bar : node_count();
}

int ScenarioConfig::effective_k_max() const {
  if (k_max > 0) return k_max;
  const int n = node_count();
  return mode == Mode::Sync ? 2 * n - 1 : (2 * n - 1) * (k_bar + tau_bar);
}

double ScenarioConfig::node_epsilon(int i) const {
  auto it = epsilon.find(i);
  return it != epsilon.end() ? it->second : epsilon_default;
}

NodeSubset ScenarioConfig::adversary_set() const {
  std::vector<int> members;
  for (const auto& [node, _] : adversaries) members.push_back(node);
  return NodeSubset(std::move(members), node_count());
}

NodeSubset ScenarioConfig::regular_set() const {
  std::vector<int> members;
  for (int i = 1; i <= node_count(); ++i) {
    if (!adversaries.count(i)) members.push_back(i);
  }
  return NodeSubset(std::move(members), node_count());
}

double ScenarioConfig::default_expected_average() const {
  double sum = 0.0;
  int count = 0;
  for (const auto& [node, value] : initial_values) {
    if (!adversaries.count(node)) {
      sum += value;
      ++count;
    }
  }
  if (count == 0) throw std::domain_error("no regular nodes");
  return sum / count;
}

std::vector<std::string> ScenarioConfig::validate() const {
  std::vector<std::string> issues;
  if (!graph) {
    issues.push_back("graph: missing");
    return issues;
  }
  const int n = node_count();
  if (n_bar != 0 && n_bar < n) issues.push_back("protocol.n_bar: smaller than N");
  if (f < 0) issues.push_back("protocol.f: negative");
  if (safe_interval.lo > safe_interval.hi) {
    issues.push_back("protocol.safe_interval: lo exceeds hi");
  }
  for (int i = 1; i <= n; ++i) {
    if (!initial_values.count(i)) {
      issues.push_back("nodes.initial_values: missing node " + std::to_string(i));
    }
  }
  for (const auto& [node, _] : initial_values) {
    if (node < 1 || node > n) {
      issues.push_back("nodes.initial_values: unknown node " + std::to_string(node));
    }
  }
  for (const auto& [node, eps] : epsilon) {
    if (node < 1 || node > n) {
      issues.push_back("nodes.epsilon: unknown node " + std::to_string(node));
    }
    if (eps < 0.0 || eps >= 1.0) {
      issues.push_back("nodes.epsilon: node " + std::to_string(node) +
                       " gain outside [0,1)");
    }
  }
  if (epsilon_default < 0.0 || epsilon_default >= 1.0) {
    issues.push_back("nodes.epsilon: default gain outside [0,1)");
  }
  for (const auto& [node, _] : adversaries) {
    if (node < 1 || node > n) {
      issues.push_back("adversaries: unknown node " + std::to_string(node));
    }
  }
  if (adversaries.size() >= static_cast<std::size_t>(n)) {
    issues.push_back("adversaries: no regular node left");
  }
  if (mode == Mode::Sync && (k_bar != 1 || tau_bar != 0)) {
    issues.push_back("schedule: sync mode forces k_bar=1, tau_bar=0");
  }
  if (k_bar < 1) issues.push_back("schedule.k_bar: must be >= 1");
  if (tau_bar < 0) issues.push_back("schedule.tau_bar: must be >= 0");
  if (k_max < 0) issues.push_back("protocol.k_max: negative");
  const int kmax = k_max > 0 ? k_max : effective_k_max();
  for (const auto& [node, rounds] : update_rounds) {
    if (node < 1 || node > n) {
      issues.push_back("schedule.update_rounds: unknown node " + std::to_string(node));
      continue;
    }
    int last = 0;
    for (int r : rounds) {
      if (r <= last) {
        issues.push_back("schedule.update_rounds: node " + std::to_string(node) +
                         " rounds not increasing");
        break;
      }
      if (r - last > k_bar) {
        issues.push_back("schedule.update_rounds: node " + std::to_string(node) +
                         " gap exceeds k_bar");
        break;
      }
      last = r;
    }
    if (!rounds.empty() && rounds.back() + k_bar <= kmax) {
      // must keep updating through the horizon
      issues.push_back("schedule.update_rounds: node " + std::to_string(node) +
                       " stops before k_max");
    }
    if (rounds.empty() && kmax >= k_bar) {
      issues.push_back("schedule.update_rounds: node " + std::to_string(node) +
                       " has no update rounds");
    }
  }
  for (const auto& [edge, d] : edge_delays) {
    if (d < 0 || d > tau_bar) {
      issues.push_back("schedule.delays: edge " + std::to_string(edge.first) + "->" +
                       std::to_string(edge.second) + " outside [0, tau_bar]");
    }
    if (!graph->has_edge(edge.first, edge.second)) {
      issues.push_back("schedule.delays: edge " + std::to_string(edge.first) + "->" +
                       std::to_string(edge.second) + " not in graph");
    }
  }
  if (delay_default && (*delay_default < 0 || *delay_default > tau_bar)) {
    issues.push_back("schedule.delays: default outside [0, tau_bar]");
  }
  return issues;
}

namespace {

struct Buffered {
  std::optional<InboundMessage> msg;
};

class Engine {
 public:
  explicit Engine(const ScenarioConfig& cfg)
      : cfg_(cfg),
        n_(cfg.node_count()),
        n_bar_(cfg.effective_n_bar()),
        k_max_(cfg.effective_k_max()),
        rng_(cfg.seed),
        buffers_(static_cast<std::size_t>(n_ + 1) * (n_ + 1)) {}

  SimulationTrace run() {
    auto issues = cfg_.validate();
    if (!issues.empty()) {
      throw std::domain_error("invalid scenario: " + issues.front());
    }
    init_trace();
    init_states();
    build_schedules();
    round_zero();
    for (int k = 1; k <= k_max_; ++k) step(k);
    finish();
    return std::move(trace_);
  }

 private:
  bool is_adversary(int i) const { return cfg_.adversaries.count(i) != 0; }

  bool acts_at(int i, int k) const {
    if (is_adversary(i)) return true;
    const auto& rounds = schedule_[i];
    return std::binary_search(rounds.begin(), rounds.end(), k);
  }

  int direct_boundary() const {
    return cfg_.mode == Mode::Sync ? 1 : cfg_.k_bar + cfg_.tau_bar;
  }

  Buffered& buffer(int receiver, int sender) {
    return buffers_[static_cast<std::size_t>(receiver) * (n_ + 1) + sender];
  }

  void init_trace() {
    trace_.scenario_name = cfg_.name;
    trace_.mode = cfg_.mode;
    trace_.node_count = n_;
    trace_.k_max = k_max_;
    trace_.f = cfg_.f;
    for (const auto& [node, _] : cfg_.adversaries) trace_.adversaries.insert(node);
    trace_.f_local_admissible =
        is_f_local_admissible(*cfg_.graph, cfg_.adversary_set(), cfg_.f);
    trace_.expected_average = cfg_.expected_average
                                  ? cfg_.expected_average
                                  : std::optional<double>(cfg_.default_expected_average());
    trace_.rounds.resize(k_max_ + 1);
  }

  void init_states() {
    for (int i = 1; i <= n_; ++i) {
      states_.emplace(i, NodeState(i, cfg_.initial_values.at(i), n_bar_,
                                   cfg_.node_epsilon(i), cfg_.safe_interval,
                                   cfg_.phi_mode));
      last_update_.emplace(i, 0);
    }
  }

  void build_schedules() {
    schedule_.assign(n_ + 1, {});
    for (int i = 1; i <= n_; ++i) {
      if (is_adversary(i)) continue;
      if (cfg_.mode == Mode::Sync) {
        for (int k = 1; k <= k_max_; ++k) schedule_[i].push_back(k);
        continue;
      }
      auto it = cfg_.update_rounds.find(i);
      if (it != cfg_.update_rounds.end()) {
        schedule_[i] = it->second;
        continue;
      }
      int r = 0;
      while (true) {
        r += rng_.uniform_int(1, cfg_.k_bar);
        if (r > k_max_) break;
        schedule_[i].push_back(r);
      }
    }
  }

  int draw_delay(int sender, int receiver) {
    if (cfg_.mode == Mode::Sync) return 0;
    auto it = cfg_.edge_delays.find({sender, receiver});
    if (it != cfg_.edge_delays.end()) return it->second;
    if (cfg_.delay_default) return *cfg_.delay_default;
    if (cfg_.tau_bar == 0) return 0;
    return rng_.uniform_int(0, cfg_.tau_bar);
  }

  void broadcast(int sender, int k) {
    const NodeState& state = states_.at(sender);
    // During the direct window nodes resend their initial memory; afterwards
    // the full post-acceptance memory goes out.
    const bool initial_window = k < direct_boundary();
    MemoryVector honest =
        initial_window ? state.initial_broadcast() : state.make_broadcast();
    for (int receiver : cfg_.graph->out_neighbor_list(sender)) {
      std::optional<MemoryVector> payload = honest;
      if (is_adversary(sender)) {
        payload = adversary_emit(cfg_.adversaries.at(sender), honest, k, receiver,
                                 sender);
        if (!payload) continue;
      }
      const int delay = draw_delay(sender, receiver);
      pending_.push_back(InboundMessage{sender, std::move(*payload), k, delay});
      pending_receiver_.push_back(receiver);
      trace_.messages.push_back(MessageRecord{k, k + delay, sender, receiver});
    }
  }

  void merge_deliveries(int k) {
    // packets delivered before round k become readable; latest sent wins
    std::size_t kept = 0;
    for (std::size_t idx = 0; idx < pending_.size(); ++idx) {
      const int delivered = pending_[idx].sent_round + pending_[idx].delay;
      if (delivered < k) {
        Buffered& slot = buffer(pending_receiver_[idx], pending_[idx].sender);
        if (!slot.msg || slot.msg->sent_round < pending_[idx].sent_round) {
          slot.msg = std::move(pending_[idx]);
        }
      } else {
        if (kept != idx) {
          pending_[kept] = std::move(pending_[idx]);
          pending_receiver_[kept] = pending_receiver_[idx];
        }
        ++kept;
      }
    }
    pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(kept), pending_.end());
    pending_receiver_.erase(pending_receiver_.begin() + static_cast<std::ptrdiff_t>(kept),
                            pending_receiver_.end());
  }

  void round_zero() {
    for (int i = 1; i <= n_; ++i) {
      NodeRound row;
      row.x = states_.at(i).x();
      row.lambda = states_.at(i).memory().occupied_count();
      row.newly_accepted = {i};
      row.updated = true;
      trace_.rounds[0].emplace(i, std::move(row));
    }
    check_retrieval(0);
    for (int i = 1; i <= n_; ++i) broadcast(i, 0);
  }

  void step(int k) {
    merge_deliveries(k);
    // process-and-update phase
    for (int i = 1; i <= n_; ++i) {
      NodeState& state = states_.at(i);
      NodeRound row;
      row.x = state.x();
      row.lambda = state.memory().occupied_count();
      if (acts_at(i, k)) {
        std::vector<InboundMessage> inbox;
        for (int j : cfg_.graph->in_neighbor_list(i)) {
          const Buffered& slot = buffer(i, j);
          if (slot.msg) inbox.push_back(*slot.msg);
        }
        const std::set<int> suspected_before = state.suspected();
        std::vector<int> accepted;
        if (k <= direct_boundary()) {
          for (const auto& msg : inbox) {
            if (auto label = state.receive_direct(msg, k)) accepted.push_back(*label);
          }
        } else {
          accepted = state.accept_by_vote(inbox, cfg_.f, k);
          state.detect_adversaries(inbox, cfg_.f);
        }
        if (cfg_.mode == Mode::Sync) {
          state.update_sync();
        } else {
          state.update_async(k, last_update_.at(i));
        }
        last_update_[i] = k;
        row.newly_accepted = std::move(accepted);
        for (int s : state.suspected()) {
          if (!suspected_before.count(s)) row.newly_suspected.push_back(s);
        }
        row.updated = true;
        row.x = state.x();
        row.lambda = state.memory().occupied_count();
      }
      trace_.rounds[k].emplace(i, std::move(row));
    }
    check_retrieval(k);
    // broadcast phase: post-acceptance memory goes out
    for (int i = 1; i <= n_; ++i) {
      if (acts_at(i, k)) broadcast(i, k);
    }
  }

  void check_retrieval(int k) {
    const NodeSubset regular = cfg_.regular_set();
    for (int i : regular) {
      auto [it, inserted] = trace_.retrieval_round.emplace(i, std::nullopt);
      if (!it->second && states_.at(i).retrieval_complete(regular)) {
        it->second = k;
      }
    }
  }

  void finish() {
    for (int i = 1; i <= n_; ++i) {
      trace_.final_x.emplace(i, states_.at(i).x());
    }
    trace_.final_states = std::move(states_);
  }

  const ScenarioConfig& cfg_;
  int n_;
  int n_bar_;
  int k_max_;
  Rng rng_;
  std::map<int, NodeState> states_;
  std::map<int, int> last_update_;
  std::vector<std::vector<int>> schedule_;
  std::vector<InboundMessage> pending_;
  std::vector<int> pending_receiver_;
  std::vector<Buffered> buffers_;
  SimulationTrace trace_;
};

}  // namespace

SimulationTrace run_sync(const ScenarioConfig& cfg) {
  if (cfg.mode != Mode::Sync) throw std::domain_error("run_sync needs mode=sync");
  return Engine(cfg).run();
}

SimulationTrace run_async(const ScenarioConfig& cfg) {
  if (cfg.mode != Mode::Async) throw std::domain_error("run_async needs mode=async");
  return Engine(cfg).run();
}

std::map<int, double> consensus_error(const SimulationTrace& trace, double expected) {
  std::map<int, double> errors;
  for (int i = 1; i <= trace.node_count; ++i) {
    if (trace.adversaries.count(i)) continue;
    errors[i] = std::abs(trace.final_x.at(i) - expected);
  }
  return errors;
}

std::map<int, std::optional<int>> retrieval_rounds(const SimulationTrace& trace) {
  return trace.retrieval_round;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string join_labels(const std::vector<int>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ";";
    out += std::to_string(labels[i]);
  }
  return out;
}

}  // namespace

std::string trace_csv(const SimulationTrace& trace) {
  std::ostringstream out;
  out << "round,node,role,x,lambda,accepted_labels,suspected,updated_this_round\n";
  for (int k = 0; k <= trace.k_max; ++k) {
    for (const auto& [node, row] : trace.rounds[k]) {
      out << k << ',' << node << ','
          << (trace.adversaries.count(node) ? "adversary" : "regular") << ','
          << format_double(row.x) << ',' << row.lambda << ','
          << join_labels(row.newly_accepted) << ',' << join_labels(row.newly_suspected)
          << ',' << (row.updated ? 1 : 0) << "\n";
    }
  }
  return out.str();
}

std::string message_csv(const SimulationTrace& trace) {
  std::ostringstream out;
  out << "sent_round,delivered_round,sender,receiver\n";
  for (const auto& m : trace.messages) {
    out << m.sent_round << ',' << m.delivered_round << ',' << m.sender << ','
        << m.receiver << "\n";
  }
  return out.str();
}

std::string summary_text(const SimulationTrace& trace) {
  std::ostringstream out;
  out << "scenario: " << trace.scenario_name << "\n";
  out << "mode: " << (trace.mode == Mode::Sync ? "sync" : "async") << "\n";
  out << "rounds: 0.." << trace.k_max << "\n";
  out << "f: " << trace.f << "\n";
  out << "f_local_admissible: " << (trace.f_local_admissible ? "yes" : "no") << "\n";
  double expected = 0.0;
  bool have_expected = trace.expected_average.has_value();
  if (have_expected) {
    expected = *trace.expected_average;
    out << "expected_average: " << format_double(expected) << "\n";
  }
  int incomplete = 0;
  for (const auto& [node, round] : trace.retrieval_round) {
    (void)node;
    if (!round) ++incomplete;
  }
  out << "retrieval_incomplete: " << incomplete << "\n";
  std::map<int, std::set<int>> suspicions;
  for (int k = 0; k <= trace.k_max; ++k) {
    for (const auto& [node, row] : trace.rounds[k]) {
      for (int s : row.newly_suspected) suspicions[node].insert(s);
    }
  }
  int suspicion_events = 0;
  for (const auto& [node, set] : suspicions) {
    (void)node;
    suspicion_events += static_cast<int>(set.size());
  }
  out << "suspicion_events: " << suspicion_events << "\n";
  for (int i = 1; i <= trace.node_count; ++i) {
    const bool adversary = trace.adversaries.count(i) != 0;
    out << "node=" << i << " role=" << (adversary ? "adversary" : "regular")
        << " final_x=" << format_double(trace.final_x.at(i)) << " err=";
    if (adversary || !have_expected) {
      out << "-";
    } else {
      out << format_double(std::abs(trace.final_x.at(i) - expected));
    }
    out << " retrieved_at=";
    if (adversary) {
      out << "-";
    } else {
      const auto& round = trace.retrieval_round.at(i);
      if (round) {
        out << *round;
      } else {
        out << "never";
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace saba
