//
// Copyright 2026 The privcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Experiment driver: gen | solve | bench | audit | oracle.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "privcut/error.h"
#include "privcut/graph_io.h"
#include "privcut/harness.h"
#include "privcut/instances.h"
#include "privcut/kcut.h"
#include "privcut/oracle.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace privcut {
namespace {

class ConfigError : public InvalidArgumentError {
 public:
  using InvalidArgumentError::InvalidArgumentError;
};

// Values bound to flags. Only flags that were actually given override the
// config file.
struct Flags {
  std::string config, graph, family, mech, terminals, out, format, edge,
      problem, name;
  std::vector<std::string> params;
  double eps = 0, delta = 0, amount = 0, confidence = 0;
  int k = 0, trials = 0, workers = 0, instances = 0;
  std::uint64_t seed = 0, floor = 0;
  bool exact = false, time = false, force = false;
};

json Defaults() {
  const unsigned hw = std::thread::hardware_concurrency();
  return {{"mech", "kcut-exp"},
          {"eps", 1.0},
          {"delta", 1e-6},
          {"k", 2},
          {"trials", 10},
          {"seed", 1},
          {"workers", hw == 0 ? 1 : static_cast<int>(hw)},
          {"format", "csv"},
          {"instances", 1},
          {"floor", 20},
          {"confidence", 0.99},
          {"exact", false},
          {"time", false},
          {"problem", "min-kcut"},
          {"name", "graph.edges"},
          {"params", json::object()}};
}

json ParseParamValue(const std::string& text) {
  json v = json::parse(text, nullptr, false);
  return v.is_discarded() ? json(text) : v;
}

json Effective(const std::string& command, const Flags& f,
               const std::map<std::string, CLI::Option*>& opts) {
  json cfg = Defaults();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ConfigError("cannot open config file " + f.config);
    json file = json::parse(in, nullptr, false);
    if (file.is_discarded() || !file.is_object()) {
      throw ConfigError("config file is not a JSON object: " + f.config);
    }
    for (auto& [key, value] : file.items()) {
      if (key == "command") continue;
      if (!cfg.contains(key) && !opts.count(key)) {
        throw ConfigError("unknown config key '" + key + "'");
      }
      cfg[key] = value;
    }
  }
  auto given = [&](const std::string& key) {
    auto it = opts.find(key);
    return it != opts.end() && it->second->count() > 0;
  };
  if (given("graph")) cfg["graph"] = f.graph;
  if (given("family")) cfg["family"] = f.family;
  if (given("mech")) cfg["mech"] = f.mech;
  if (given("terminals")) cfg["terminals"] = f.terminals;
  if (given("format")) cfg["format"] = f.format;
  if (given("edge")) cfg["edge"] = f.edge;
  if (given("problem")) cfg["problem"] = f.problem;
  if (given("name")) cfg["name"] = f.name;
  if (given("eps")) cfg["eps"] = f.eps;
  if (given("delta")) cfg["delta"] = f.delta;
  if (given("amount")) cfg["amount"] = f.amount;
  if (given("confidence")) cfg["confidence"] = f.confidence;
  if (given("k")) cfg["k"] = f.k;
  if (given("trials")) cfg["trials"] = f.trials;
  if (given("workers")) cfg["workers"] = f.workers;
  if (given("instances")) cfg["instances"] = f.instances;
  if (given("seed")) cfg["seed"] = f.seed;
  if (given("floor")) cfg["floor"] = f.floor;
  if (given("exact")) cfg["exact"] = f.exact;
  if (given("time")) cfg["time"] = f.time;
  if (given("param")) {
    for (const std::string& kv : f.params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--param expects key=value, got '" + kv + "'");
      }
      cfg["params"][kv.substr(0, eq)] = ParseParamValue(kv.substr(eq + 1));
    }
  }
  cfg["command"] = command;
  return cfg;
}

std::vector<int> SplitInts(const std::string& text, char sep) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw ConfigError("bad integer '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

// "0,1,2" multiway terminals; "0-3" an s-t pair; "0-1,2-3" pairs.
std::optional<TerminalSet> ParseTerminals(const json& value) {
  if (value.is_null()) return std::nullopt;
  if (value.is_array()) {
    if (!value.empty() && value[0].is_array()) {
      return TerminalSet::Pairs(
          value.get<std::vector<std::pair<Vertex, Vertex>>>());
    }
    return TerminalSet::Multiway(value.get<std::vector<Vertex>>());
  }
  const std::string text = value.get<std::string>();
  if (text.empty()) throw ConfigError("empty terminal list");
  if (text.find('-') == std::string::npos) {
    return TerminalSet::Multiway(SplitInts(text, ','));
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::vector<int> ends = SplitInts(item, '-');
    if (ends.size() != 2) throw ConfigError("bad terminal pair '" + item + "'");
    pairs.emplace_back(ends[0], ends[1]);
  }
  if (pairs.size() == 1) return TerminalSet::St(pairs[0].first, pairs[0].second);
  return TerminalSet::Pairs(pairs);
}

MechanismParams ParamsFrom(const json& cfg) {
  MechanismParams p;
  p.epsilon = cfg["eps"].get<double>();
  p.delta = cfg["delta"].get<double>();
  p.k = cfg["k"].get<int>();
  if (cfg.contains("terminals")) p.terminals = ParseTerminals(cfg["terminals"]);
  if (!(p.epsilon > 0.0)) throw ConfigError("--eps must be positive");
  if (!(p.delta > 0.0 && p.delta < 1.0)) {
    throw ConfigError("--delta must lie in (0, 1)");
  }
  if (p.k < 1) throw ConfigError("--k must be positive");
  return p;
}

std::vector<InstanceSpec> InstancesFrom(const json& cfg) {
  const bool has_graph = cfg.contains("graph");
  const bool has_family = cfg.contains("family");
  if (has_graph == has_family) {
    throw ConfigError("give exactly one of --graph and --family");
  }
  if (has_graph) {
    const std::string path = cfg["graph"].get<std::string>();
    if (!fs::exists(path)) throw ConfigError("graph file not found: " + path);
    return {InstanceSpec{"file", {{"path", path}}, 0}};
  }
  const int count = cfg["instances"].get<int>();
  if (count < 1) throw ConfigError("--instances must be positive");
  std::vector<InstanceSpec> specs;
  const std::uint64_t seed = cfg["seed"].get<std::uint64_t>();
  for (int i = 0; i < count; ++i) {
    specs.push_back(InstanceSpec{cfg["family"].get<std::string>(),
                                 cfg["params"], DeriveSeed(seed, 1u << 20, i)});
  }
  return specs;
}

class OutputDir {
 public:
  OutputDir(const std::string& path, bool force) : path_(path), force_(force) {
    fs::create_directories(path_);
  }

  fs::path Create(const std::string& name, std::ofstream& out,
                  bool binary = false) const {
    const fs::path target = path_ / name;
    if (fs::exists(target) && !force_) {
      throw ConfigError("refusing to overwrite " + target.string() +
                        " (pass --force)");
    }
    out.open(target, binary ? std::ios::out | std::ios::binary : std::ios::out);
    if (!out) throw ConfigError("cannot write " + target.string());
    return target;
  }

  void WriteJson(const std::string& name, const json& value) const {
    std::ofstream out;
    Create(name, out);
    out << value.dump(2) << '\n';
  }

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  bool force_;
};

void CheckK(const MechanismParams& p, const Graph& g) {
  if (p.k > g.n()) {
    throw ConfigError("k = " + std::to_string(p.k) + " exceeds n = " +
                      std::to_string(g.n()));
  }
}

std::size_t EdgeCount(const Graph& g) {
  std::size_t m = 0;
  for (Eigen::Index i = 0; i < g.weights().size(); ++i) {
    if (g.weights()[i] > 0.0) ++m;
  }
  return m;
}

int CmdGen(const json& cfg, const OutputDir& dir) {
  if (!cfg.contains("family")) throw ConfigError("gen needs --family");
  const Instance inst = Generate(InstanceSpec{
      cfg["family"].get<std::string>(), cfg["params"],
      cfg["seed"].get<std::uint64_t>()});
  const std::string name = cfg["name"].get<std::string>();
  const GraphFormat format = FormatForPath(name);
  std::ofstream out;
  const fs::path target =
      dir.Create(name, out, format == GraphFormat::kDenseBinary);
  if (format == GraphFormat::kDenseBinary) {
    WriteDenseBinary(out, inst.graph);
  } else {
    WriteEdgeList(out, inst.graph);
  }
  std::cout << "wrote " << inst.graph.n() << " vertices, "
            << EdgeCount(inst.graph) << " edges to " << target.string()
            << '\n';
  return 0;
}

int CmdSolve(const json& cfg, const OutputDir& dir) {
  const MechanismInfo& mech = FindMechanism(cfg["mech"].get<std::string>());
  const MechanismParams params = ParamsFrom(cfg);
  std::vector<InstanceSpec> specs = InstancesFrom(cfg);
  specs.resize(1);
  const Instance inst = Generate(specs[0]);
  CheckK(params, inst.graph);
  const auto reports =
      RunTrials(mech, specs, 1, cfg["seed"].get<std::uint64_t>(), params);
  const TrialReport& r = reports.front();
  if (!r.output) {
    // Surface the typed failure.
    MechanismParams p = params;
    if (!p.terminals) p.terminals = inst.terminals;
    RandomSource rng(r.seed);
    mech.run(inst.graph, p, rng);
    throw std::runtime_error(r.error);
  }
  dir.WriteJson("solve-partition.json",
                {{"labels", r.output->labels()},
                 {"k", r.output->k()},
                 {"cost", r.cost}});
  json report = r.ToJson();
  if (mech.tag.rfind("kcut-exp", 0) == 0 || mech.tag == "private-min-cut") {
    const AugmentationChain chain = DefaultChain(inst.graph);
    report["augmentation"] = {
        {"chain_steps", chain.steps()},
        {"first_stacked_index", FirstStackedIndex(inst.graph, chain)},
        {"unit_weights", HasUnitWeights(inst.graph)}};
  }
  dir.WriteJson("solve-report.json", report);
  std::cout << mech.tag << " cost " << r.cost;
  if (r.optimum) std::cout << " optimum " << *r.optimum;
  std::cout << '\n';
  return 0;
}

int CmdBench(const json& cfg, const OutputDir& dir) {
  const MechanismInfo& mech = FindMechanism(cfg["mech"].get<std::string>());
  const MechanismParams params = ParamsFrom(cfg);
  const std::vector<InstanceSpec> specs = InstancesFrom(cfg);
  const int trials = cfg["trials"].get<int>();
  if (trials < 0) throw ConfigError("--trials must be >= 0");
  const std::string format = cfg["format"].get<std::string>();
  if (format != "csv" && format != "json") {
    throw ConfigError("--format must be csv or json");
  }
  RunOptions options;
  options.workers = cfg["workers"].get<int>();
  options.record_time = cfg["time"].get<bool>();
  const auto reports = RunTrials(mech, specs, trials,
                                 cfg["seed"].get<std::uint64_t>(), params,
                                 options);
  std::ofstream out;
  if (format == "csv") {
    dir.Create("bench-trials.csv", out);
    WriteTrialsCsv(out, reports, options.record_time);
  } else {
    dir.Create("bench-trials.jsonl", out);
    WriteTrialsJsonLines(out, reports);
  }
  std::size_t failed = 0;
  for (const TrialReport& r : reports) failed += !r.error.empty();
  const auto mean = MeanAdditiveError(reports);
  std::cout << "mean-additive-error "
            << (mean ? std::to_string(*mean) : std::string("n/a")) << " over "
            << reports.size() << " trials";
  if (failed) std::cout << " (" << failed << " failed)";
  std::cout << '\n';
  return 0;
}

EdgeDelta DeltaFrom(const json& cfg, const Graph& g) {
  EdgeDelta d;
  if (cfg.contains("edge")) {
    const std::vector<int> ends = SplitInts(cfg["edge"].get<std::string>(), ',');
    if (ends.size() != 2) throw ConfigError("--edge expects u,v");
    d.pair = VertexPair(ends[0], ends[1]);
  } else {
    d.pair = VertexPair(0, 1);
  }
  if (d.pair.u < 0 || d.pair.v >= g.n() || d.pair.u == d.pair.v) {
    throw ConfigError("--edge is not a vertex pair of the graph");
  }
  if (cfg.contains("amount")) {
    d.amount = cfg["amount"].get<double>();
  } else {
    const double w = g.weight(d.pair.u, d.pair.v);
    d.amount = w > 0.0 ? -std::min(1.0, w) : 1.0;
  }
  if (std::abs(d.amount) > 1.0) throw ConfigError("|--amount| must be <= 1");
  return d;
}

int CmdAudit(const json& cfg, const OutputDir& dir) {
  const MechanismInfo& mech = FindMechanism(cfg["mech"].get<std::string>());
  MechanismParams params = ParamsFrom(cfg);
  const std::vector<InstanceSpec> specs = InstancesFrom(cfg);
  const Instance inst = Generate(specs.front());
  if (!params.terminals) params.terminals = inst.terminals;
  CheckK(params, inst.graph);
  const EdgeDelta delta = DeltaFrom(cfg, inst.graph);
  const double claimed = mech.is_private
                             ? mech.budget(inst.graph, params).epsilon
                             : params.epsilon;
  AuditReport report;
  if (cfg["exact"].get<bool>()) {
    KCutMechanismOptions options;
    if (mech.tag == "kcut-exp-restricted") {
      options.support = KCutSupport::kRestricted;
    } else if (mech.tag != "kcut-exp") {
      throw ConfigError("--exact supports kcut-exp and kcut-exp-restricted");
    }
    KCutExponentialMechanism a(inst.graph, params.k, params.epsilon,
                                     options);
    KCutExponentialMechanism b(ApplyDelta(inst.graph, delta), params.k,
                                     params.epsilon, options);
    report = AuditExact(a.OutputDistribution(), b.OutputDistribution(),
                        claimed, DescribeDelta(delta));
  } else {
    AuditOptions options;
    options.trials = cfg["trials"].get<std::uint64_t>();
    options.count_floor = cfg["floor"].get<std::uint64_t>();
    options.confidence = cfg["confidence"].get<double>();
    options.seed = cfg["seed"].get<std::uint64_t>();
    options.workers = cfg["workers"].get<int>();
    const Sampler sampler = [&](const Graph& g, RandomSource& rng) {
      return mech.run(g, params, rng);
    };
    report = AuditPrivacy(sampler, inst.graph, delta, claimed, options);
  }
  dir.WriteJson("audit-report.json", report.ToJson());
  std::cout << report.Summary() << '\n';
  return 0;
}

int CmdOracle(const json& cfg, const OutputDir& dir) {
  MechanismParams params = ParamsFrom(cfg);
  const std::vector<InstanceSpec> specs = InstancesFrom(cfg);
  const Instance inst = Generate(specs.front());
  if (!params.terminals) params.terminals = inst.terminals;
  const Graph& g = inst.graph;
  const std::string problem = cfg["problem"].get<std::string>();
  CutResult result;
  if (problem == "min-cut") {
    result = ExactMinKCut(g, 2);
  } else if (problem == "min-kcut") {
    CheckK(params, g);
    result = ExactMinKCut(g, params.k);
  } else if (problem == "min-st-cut") {
    const TerminalSet t = ResolveTerminals(TerminalNeed::kSt, g.n(), params);
    result = ExactMinStCut(g, t.pairs[0].first, t.pairs[0].second);
  } else if (problem == "multiway") {
    result =
        ExactMultiwayCut(g, ResolveTerminals(TerminalNeed::kMultiway, g.n(), params));
  } else if (problem == "multicut") {
    result =
        ExactMulticut(g, ResolveTerminals(TerminalNeed::kPairs, g.n(), params));
  } else if (problem == "max-cut") {
    result = ExactMaxCut(g);
  } else {
    throw ConfigError("unknown --problem '" + problem + "'");
  }
  dir.WriteJson("oracle-result.json", {{"problem", problem},
                                       {"cost", result.cost},
                                       {"labels", result.partition.labels()}});
  std::cout << problem << " optimum " << result.cost << '\n';
  return 0;
}

std::string HelpFooter() {
  std::string text = "\nMechanisms:\n";
  for (const MechanismInfo& m : Mechanisms()) {
    text += "  " + m.tag + std::string(24 - std::min<std::size_t>(22, m.tag.size()), ' ') +
            m.summary + "\n";
  }
  text += "\nInstance families:\n ";
  for (const std::string& f : InstanceFamilies()) text += " " + f;
  text +=
      "\n\nOracle problems: min-cut min-kcut min-st-cut multiway multicut "
      "max-cut\nTerminals: \"0,1,2\" (multiway), \"0-5\" (s-t), "
      "\"0-1,2-3\" (pairs)\nPRIVCUT_OUT sets the default --out directory.\n";
  return text;
}

int Main(int argc, char** argv) {
  CLI::App app{"Differentially private graph cuts: mechanisms, oracles, "
               "audits"};
  app.footer(HelpFooter());
  app.require_subcommand(1);
  Flags f;
  const char* env_out = std::getenv("PRIVCUT_OUT");
  f.out = env_out && *env_out ? env_out : "privcut-out";

  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen", "generate an instance graph file"},
      {"solve", "run one mechanism once"},
      {"bench", "run trials and write a report table"},
      {"audit", "empirical privacy audit on a neighboring pair"},
      {"oracle", "exact optimum of a cut problem"}};
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    auto& o = opts[name];
    o["config"] = sub->add_option("--config", f.config, "JSON config file");
    o["out"] = sub->add_option("--out", f.out, "output directory");
    o["force"] = sub->add_flag("--force", f.force, "overwrite artifacts");
    o["seed"] = sub->add_option("--seed", f.seed, "master seed");
    o["family"] = sub->add_option("--family", f.family, "instance family");
    o["param"] = sub->add_option("--param", f.params,
                                 "family parameter key=value (repeatable)");
    if (name == "gen") {
      o["name"] = sub->add_option("--name", f.name,
                                  "graph file name (*.bin for binary)");
      continue;
    }
    o["graph"] = sub->add_option("--graph", f.graph, "graph file");
    o["eps"] = sub->add_option("--eps", f.eps, "privacy parameter epsilon");
    o["delta"] = sub->add_option("--delta", f.delta, "privacy parameter delta");
    o["k"] = sub->add_option("--k", f.k, "number of parts or terminal pairs");
    o["terminals"] = sub->add_option("--terminals", f.terminals, "terminals");
    if (name == "oracle") {
      o["problem"] = sub->add_option("--problem", f.problem, "cut problem");
      continue;
    }
    o["mech"] = sub->add_option("--mech", f.mech, "mechanism tag");
    if (name == "solve") continue;
    o["trials"] = sub->add_option("--trials", f.trials, "trials");
    o["workers"] = sub->add_option("--workers", f.workers, "worker threads");
    if (name == "bench") {
      o["format"] = sub->add_option("--format", f.format, "csv or json");
      o["instances"] =
          sub->add_option("--instances", f.instances, "instances per family");
      o["time"] = sub->add_flag("--time", f.time, "record wall time");
    } else {
      o["edge"] = sub->add_option("--edge", f.edge, "neighbor pair u,v");
      o["amount"] = sub->add_option("--amount", f.amount, "weight change");
      o["floor"] = sub->add_option("--floor", f.floor, "count floor");
      o["confidence"] =
          sub->add_option("--confidence", f.confidence, "CI confidence");
      o["exact"] = sub->add_flag("--exact", f.exact,
                                 "exact output distributions (k-cut only)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command;
  for (const auto& [name, description] : commands) {
    if (app.got_subcommand(name)) command = name;
  }
  try {
    json cfg = Effective(command, f, opts[command]);
    const OutputDir dir(f.out, f.force);
    dir.WriteJson(command + "-config.json", cfg);
    if (command == "gen") return CmdGen(cfg, dir);
    if (command == "solve") return CmdSolve(cfg, dir);
    if (command == "bench") return CmdBench(cfg, dir);
    if (command == "audit") return CmdAudit(cfg, dir);
    return CmdOracle(cfg, dir);
  } catch (const CapabilityError& e) {
    std::cerr << "privcut: " << e.what() << '\n';
    return 3;
  } catch (const InvalidArgumentError& e) {
    std::cerr << "privcut: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "privcut: config: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "privcut: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "privcut: internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace
}  // namespace privcut

int main(int argc, char** argv) { return privcut::Main(argc, argv); }
