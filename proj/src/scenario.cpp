#include "saba/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace saba {

namespace {

using nlohmann::json;

int parse_label(const std::string& key, const std::string& where) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(key, &pos);
    if (pos != key.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ScenarioError(where + ": bad node label '" + key + "'");
  }
}

Digraph parse_graph_section(const json& section) {
  if (section.contains("edge_list")) {
    try {
      return parse_edge_list(section.at("edge_list").get<std::string>());
    } catch (const EdgeListParseError& e) {
      throw ScenarioError(std::string("graph.edge_list: ") + e.what());
    }
  }
  if (section.contains("generator")) {
    const json& gen = section.at("generator");
    const std::string family = gen.at("family").get<std::string>();
    const int n = gen.at("n").get<int>();
    if (family == "complete") return complete(n);
    if (family == "wheel") return wheel(n, gen.at("hub").get<int>());
    if (family == "cycle") return cycle_bidirectional(n);
    throw ScenarioError("graph.generator.family: unknown family '" + family + "'");
  }
  throw ScenarioError("graph: needs 'edge_list' or 'generator'");
}

AdversaryStrategy parse_strategy(const json& spec, const std::string& where) {
  const std::string kind = spec.at("strategy").get<std::string>();
  if (kind == "constant_lie") {
    ConstantLie s;
    s.value = spec.at("value").get<double>();
    s.target_labels = spec.at("target_labels").get<std::vector<int>>();
    s.from_round = spec.value("from_round", 1);
    return s;
  }
  if (kind == "switch_own") {
    SwitchOwn s;
    s.honest_value = spec.at("honest_value").get<double>();
    s.new_value = spec.at("new_value").get<double>();
    s.switch_round = spec.at("switch_round").get<int>();
    if (s.switch_round < 1) throw ScenarioError(where + ".switch_round: must be >= 1");
    return s;
  }
  if (kind == "equivocate") {
    Equivocate s;
    for (const auto& [neighbor, overrides] : spec.at("per_neighbor").items()) {
      auto& labels = s.per_neighbor[parse_label(neighbor, where + ".per_neighbor")];
      for (const auto& [label, value] : overrides.items()) {
        labels[parse_label(label, where + ".per_neighbor")] = value.get<double>();
      }
    }
    return s;
  }
  if (kind == "out_of_interval") {
    return OutOfInterval{spec.at("value").get<double>()};
  }
  if (kind == "silent") return Silent{};
  if (kind == "honest") return Honest{};
  throw ScenarioError(where + ".strategy: unknown strategy '" + kind + "'");
}

std::vector<int> parse_update_rounds(const json& spec, int k_max,
                                     const std::string& where) {
  if (spec.is_array()) return spec.get<std::vector<int>>();
  if (spec.is_object()) {
    const int period = spec.at("period").get<int>();
    const int start = spec.value("start", period);
    if (period < 1) throw ScenarioError(where + ".period: must be >= 1");
    std::vector<int> rounds;
    for (int r = start; r <= k_max; r += period) rounds.push_back(r);
    return rounds;
  }
  throw ScenarioError(where + ": expected array or {period, start}");
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("not valid JSON: ") + e.what());
  }
  ScenarioConfig cfg;
  try {
    cfg.name = doc.value("name", "scenario");
    cfg.graph = parse_graph_section(doc.at("graph"));

    const json& protocol = doc.at("protocol");
    cfg.f = protocol.at("f").get<int>();
    cfg.n_bar = protocol.value("n_bar", 0);
    cfg.k_max = protocol.value("k_max", 0);
    if (protocol.contains("phi_mode")) {
      const std::string mode = protocol.at("phi_mode").get<std::string>();
      if (mode == "include-all") {
        cfg.phi_mode = PhiMode::IncludeAll;
      } else if (mode == "exclude-detected") {
        cfg.phi_mode = PhiMode::ExcludeDetected;
      } else {
        throw ScenarioError("protocol.phi_mode: unknown mode '" + mode + "'");
      }
    }
    if (protocol.contains("safe_interval")) {
      const auto bounds = protocol.at("safe_interval").get<std::vector<double>>();
      if (bounds.size() != 2) {
        throw ScenarioError("protocol.safe_interval: expected [lo, hi]");
      }
      cfg.safe_interval = Interval{bounds[0], bounds[1]};
    }
    if (protocol.contains("expected_average")) {
      cfg.expected_average = protocol.at("expected_average").get<double>();
    }

    const json& nodes = doc.at("nodes");
    for (const auto& [label, value] : nodes.at("initial_values").items()) {
      cfg.initial_values[parse_label(label, "nodes.initial_values")] =
          value.get<double>();
    }
    if (nodes.contains("epsilon")) {
      for (const auto& [label, value] : nodes.at("epsilon").items()) {
        if (label == "default") {
          cfg.epsilon_default = value.get<double>();
        } else {
          cfg.epsilon[parse_label(label, "nodes.epsilon")] = value.get<double>();
        }
      }
    }

    if (doc.contains("adversaries")) {
      for (const auto& [label, spec] : doc.at("adversaries").items()) {
        const int node = parse_label(label, "adversaries");
        cfg.adversaries.emplace(node,
                                parse_strategy(spec, "adversaries." + label));
      }
    }

    const json& schedule = doc.at("schedule");
    const std::string mode = schedule.at("mode").get<std::string>();
    if (mode == "sync") {
      cfg.mode = Mode::Sync;
    } else if (mode == "async") {
      cfg.mode = Mode::Async;
    } else {
      throw ScenarioError("schedule.mode: unknown mode '" + mode + "'");
    }
    cfg.k_bar = schedule.value("k_bar", 1);
    cfg.tau_bar = schedule.value("tau_bar", 0);
    cfg.seed = schedule.value("seed", std::uint64_t{1});
    if (schedule.contains("update_rounds")) {
      const int k_max = cfg.effective_k_max();
      for (const auto& [label, spec] : schedule.at("update_rounds").items()) {
        const int node = parse_label(label, "schedule.update_rounds");
        cfg.update_rounds[node] =
            parse_update_rounds(spec, k_max, "schedule.update_rounds." + label);
      }
    }
    if (schedule.contains("delays")) {
      const json& delays = schedule.at("delays");
      if (delays.contains("default")) {
        cfg.delay_default = delays.at("default").get<int>();
      }
      if (delays.contains("per_edge")) {
        for (const auto& [edge, value] : delays.at("per_edge").items()) {
          std::istringstream es(edge);
          int from = 0, to = 0;
          if (!(es >> from >> to)) {
            throw ScenarioError("schedule.delays.per_edge: bad edge key '" + edge +
                                "' (want \"<src> <dst>\")");
          }
          cfg.edge_delays[{from, to}] = value.get<int>();
        }
      }
    }
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("schema: ") + e.what());
  }

  auto issues = cfg.validate();
  if (!issues.empty()) {
    std::string all = issues.front();
    for (std::size_t i = 1; i < issues.size(); ++i) all += "; " + issues[i];
    throw ScenarioError(all);
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace saba
