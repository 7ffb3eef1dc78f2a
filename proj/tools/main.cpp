#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "saba/robustness.hpp"
#include "saba/scenario.hpp"
#include "saba/simulator.hpp"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;

saba::Digraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return saba::parse_edge_list(buf.str());
}

std::vector<int> parse_label_list(const std::string& csv) {
  std::vector<int> labels;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) labels.push_back(std::stoi(item));
  return labels;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir) {
  saba::ScenarioConfig cfg = saba::load_scenario(scenario_path);
  saba::SimulationTrace trace =
      cfg.mode == saba::Mode::Sync ? saba::run_sync(cfg) : saba::run_async(cfg);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  write_file(dir / "trace.csv", saba::trace_csv(trace));
  write_file(dir / "messages.csv", saba::message_csv(trace));
  const std::string summary = saba::summary_text(trace);
  write_file(dir / "summary.txt", summary);
  std::cout << summary;
  return kExitTrue;
}

int cmd_check(const std::string& graph_path, const std::string& kind, int r, int f,
              const std::string& set_csv, bool audit) {
  const saba::Digraph g = load_graph(graph_path);
  saba::RobustnessReport report;
  std::optional<std::uint64_t> predicted;
  if (kind == "robust") {
    report = saba::is_r_robust(g, r, audit);
  } else if (kind == "strong-robust") {
    report = saba::is_strongly_r_robust(g, r, audit);
    predicted = saba::predicted_ops_alg3(g.node_count());
  } else if (kind == "strong-robust-wrt") {
    if (set_csv.empty()) throw CLI::ValidationError("--set is required for this kind");
    report = saba::is_strongly_r_robust_wrt(
        g, saba::NodeSubset(parse_label_list(set_csv), g.node_count()), r, audit);
  } else if (kind == "resilient") {
    report = saba::is_f_resilient(g, f, audit);
    predicted = saba::predicted_ops_alg4(g.node_count());
  } else {
    throw CLI::ValidationError("unknown --kind: " + kind);
  }
  std::cout << saba::format_report(report, predicted);
  return report.verdict ? kExitTrue : kExitFalse;
}

int cmd_connectivity(const std::string& graph_path, bool with_paths) {
  const saba::Digraph g = load_graph(graph_path);
  const auto category = saba::connectivity_category(g);
  std::cout << "category: " << saba::to_string(category) << "\n";
  if (category == saba::ConnectivityCategory::C3) {
    std::cout << "kappa3: " << saba::strong_connectivity(g) << "\n";
  }
  if (with_paths) {
    std::cout << "disjoint_paths:\n";
    for (int i = 1; i <= g.node_count(); ++i) {
      for (int j = 1; j <= g.node_count(); ++j) {
        std::cout << (j > 1 ? " " : "") << (i == j ? 0 : saba::disjoint_paths(g, i, j));
      }
      std::cout << "\n";
    }
  }
  return kExitTrue;
}

int cmd_gen(const std::string& family, int n, int hub) {
  saba::Digraph g = [&] {
    if (family == "complete") return saba::complete(n);
    if (family == "wheel") return saba::wheel(n, hub > 0 ? hub : n);
    if (family == "cycle") return saba::cycle_bidirectional(n);
    throw CLI::ValidationError("unknown --family: " + family);
  }();
  std::cout << saba::serialize_edge_list(g);
  return kExitTrue;
}

// Fixture search over symmetric graphs: all unordered pairs in lexicographic
// order; the optional required pair is always present and the rest toggle
// through an ascending bitmask (exhaustive when feasible, else seeded
// sampling). With --adversary the broken-edge attack must actually fail.
struct SearchOptions {
  int n = 6;
  int r = 3;
  std::string must_contain;
  bool break_on_removal = false;
  int adversary = 0;
  std::uint64_t seed = 1;
  std::uint64_t samples = 200000;
};

bool attack_fails(const saba::Digraph& broken, int adversary, int n) {
  saba::ScenarioConfig cfg;
  cfg.name = "search_probe";
  cfg.graph = broken;
  cfg.f = 1;
  for (int i = 1; i <= n; ++i) cfg.initial_values[i] = i;
  std::vector<int> targets;
  for (int i = 1; i <= n; ++i) {
    if (i != adversary) targets.push_back(i);
  }
  cfg.adversaries.emplace(adversary, saba::ConstantLie{targets, 1.5, 1});
  // own-label broadcasts stay honest, so the reachable average includes the
  // adversary's initial value
  double expected = 0.0;
  for (int i = 1; i <= n; ++i) expected += cfg.initial_values[i];
  expected /= n;
  const auto trace = saba::run_sync(cfg);
  for (int i = 1; i <= n; ++i) {
    if (i == adversary) continue;
    if (!trace.retrieval_round.at(i) &&
        std::abs(trace.final_x.at(i) - expected) > 0.1) {
      return true;
    }
  }
  return false;
}

int cmd_search_fixture(const SearchOptions& opt) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 1; a <= opt.n; ++a) {
    for (int b = a + 1; b <= opt.n; ++b) pairs.emplace_back(a, b);
  }
  std::pair<int, int> required{0, 0};
  if (!opt.must_contain.empty()) {
    const auto labels = parse_label_list(opt.must_contain);
    if (labels.size() != 2) {
      throw CLI::ValidationError("--must-contain-edge wants \"a,b\"");
    }
    required = {std::min(labels[0], labels[1]), std::max(labels[0], labels[1])};
  } else if (opt.break_on_removal || opt.adversary > 0) {
    throw CLI::ValidationError(
        "--break-on-removal/--adversary need --must-contain-edge");
  }
  std::vector<std::pair<int, int>> optional_pairs;
  for (const auto& p : pairs) {
    if (p != required) optional_pairs.push_back(p);
  }
  const int m = static_cast<int>(optional_pairs.size());

  auto candidate = [&](std::uint64_t mask) {
    std::vector<saba::Digraph::Edge> edges;
    auto add_pair = [&edges](const std::pair<int, int>& p) {
      edges.emplace_back(p.first, p.second);
      edges.emplace_back(p.second, p.first);
    };
    if (required.first != 0) add_pair(required);
    for (int b = 0; b < m; ++b) {
      if (mask >> b & 1) add_pair(optional_pairs[b]);
    }
    return saba::Digraph(opt.n, std::move(edges));
  };

  auto matches = [&](const saba::Digraph& g) {
    if (!saba::is_strongly_r_robust(g, opt.r).verdict) return false;
    if (opt.break_on_removal) {
      const auto broken = g.remove_edge(required.first, required.second, true);
      if (saba::is_strongly_r_robust(broken, opt.r).verdict) return false;
      if (opt.adversary > 0 && !attack_fails(broken, opt.adversary, opt.n)) {
        return false;
      }
    }
    return true;
  };

  if (m <= 24) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      const saba::Digraph g = candidate(mask);
      if (matches(g)) {
        std::cout << saba::serialize_edge_list(g);
        return kExitTrue;
      }
    }
  } else {
    saba::Rng rng(opt.seed);
    for (std::uint64_t trial = 0; trial < opt.samples; ++trial) {
      std::uint64_t mask = 0;
      for (int b = 0; b < m; ++b) {
        if (rng.chance(0.5)) mask |= std::uint64_t{1} << b;
      }
      const saba::Digraph g = candidate(mask);
      if (matches(g)) {
        std::cout << saba::serialize_edge_list(g);
        return kExitTrue;
      }
    }
  }
  std::cerr << "search exhausted: no graph satisfies the constraints\n";
  return kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Byzantine-resilient distributed averaging: simulator and "
               "graph-robustness analyzer"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  auto* simulate = app.add_subcommand("simulate", "run a scenario, write CSV + summary");
  simulate->add_option("scenario", scenario_path, "scenario JSON file")->required();
  simulate->add_option("out_dir", out_dir, "output directory")->required();

  std::string graph_path, kind, set_csv;
  int r = 1, f = 1;
  bool audit = false;
  auto* check = app.add_subcommand("check", "robustness / resiliency checks");
  check->add_option("graph", graph_path, "edge-list file")->required();
  check->add_option("--kind", kind, "robust|strong-robust|strong-robust-wrt|resilient")
      ->required();
  check->add_option("--r", r, "robustness degree");
  check->add_option("--f", f, "adversary bound");
  check->add_option("--set", set_csv, "reference set, e.g. 1,2,3");
  check->add_flag("--audit", audit, "disable early exit; report operation counts");

  std::string conn_path;
  bool with_paths = false;
  auto* connectivity = app.add_subcommand("connectivity", "category C0-C3 and kappa3");
  connectivity->add_option("graph", conn_path, "edge-list file")->required();
  connectivity->add_flag("--paths", with_paths, "print the disjoint-path matrix");

  SearchOptions search;
  auto* search_cmd =
      app.add_subcommand("search-fixture", "find a strongly r-robust witness graph");
  search_cmd->add_option("--n", search.n, "node count")->required();
  search_cmd->add_option("--r", search.r, "robustness degree")->required();
  search_cmd->add_option("--must-contain-edge", search.must_contain, "pair a,b");
  search_cmd->add_flag("--break-on-removal", search.break_on_removal,
                       "require robustness to break when the pair is removed");
  search_cmd->add_option("--adversary", search.adversary,
                         "also require the broken-edge attack to fail dynamically");
  search_cmd->add_option("--seed", search.seed, "sampling seed");
  search_cmd->add_option("--samples", search.samples, "sampling budget");

  std::string family;
  int n = 0, hub = 0;
  auto* gen = app.add_subcommand("gen", "emit a named graph family as an edge list");
  gen->add_option("--family", family, "complete|wheel|cycle")->required();
  gen->add_option("--n", n, "node count")->required();
  gen->add_option("--hub", hub, "wheel hub (default n)");

  try {
    app.parse(argc, argv);
    if (simulate->parsed()) return cmd_simulate(scenario_path, out_dir);
    if (check->parsed()) return cmd_check(graph_path, kind, r, f, set_csv, audit);
    if (connectivity->parsed()) return cmd_connectivity(conn_path, with_paths);
    if (search_cmd->parsed()) return cmd_search_fixture(search);
    if (gen->parsed()) return cmd_gen(family, n, hub);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
