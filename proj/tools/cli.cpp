// Copyright 2026 The MIRAGE Transpiler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mirage/errors.hpp"
#include "mirage/mirage.hpp"
#include "mirage/qasm.hpp"
#include "mirage/score.hpp"
#include "mirage/simverify.hpp"
#include "mirage/topology.hpp"

#ifndef MIRAGE_VERSION
#define MIRAGE_VERSION "0.0.0"
#endif

namespace mirage::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json base_report(std::string_view command) {
  json r;
  r["report_version"] = kReportVersion;
  r["tool"] = "mirage";
  r["version"] = MIRAGE_VERSION;
  r["command"] = command;
  return r;
}

fs::path resolve_cache_dir(const CommonOptions& common) {
  if (!common.cache_dir.empty()) return common.cache_dir;
  if (const char* env = std::getenv("MIRAGE_CACHE_DIR"); env && *env) return env;
  return ".mirage-cache";
}

json metrics_json(const CostMetrics& m) {
  return {{"pulse_depth", m.pulse_depth},
          {"total_cost", m.total_cost},
          {"two_q_gate_count", m.two_q_gate_count},
          {"swap_count", m.swap_count}};
}

json error_json(const std::exception& e) {
  json err;
  if (const auto* se = dynamic_cast<const SyntaxError*>(&e)) {
    err["code"] = std::string(to_string(se->code()));
    err["line"] = se->line();
    err["column"] = se->column();
  } else if (const auto* me = dynamic_cast<const Error*>(&e)) {
    err["code"] = std::string(to_string(me->code()));
  } else {
    err["code"] = "Internal";
  }
  err["message"] = e.what();
  return err;
}

TrialPlan make_plan(int trials, std::string_view aggression, std::string_view metric) {
  if (trials < 1) throw Error(ErrorCode::Usage, "--trials must be at least 1");
  TrialPlan plan;
  plan.total_trials = trials;
  plan.metric = parse_trial_metric(metric);
  if (aggression != "mixed") {
    int level = -1;
    if (aggression.size() == 1 && aggression[0] >= '0' && aggression[0] <= '3')
      level = aggression[0] - '0';
    if (level < 0) throw Error(ErrorCode::Usage, "--aggression must be mixed or 0..3");
    plan = TrialPlan::fixed(trials, aggression_from_int(level), plan.metric);
  }
  return plan;
}

/// Input pipeline shared by transpile and bench.
struct PreparedCircuit {
  CircuitDag logical;
  std::size_t input_two_q = 0;
};

PreparedCircuit prepare(const fs::path& file) {
  const CircuitDag lowered = lower(parse_qasm_file(file));
  PreparedCircuit pc;
  pc.input_two_q = lowered.two_qubit_count();
  pc.logical = consolidate_blocks(clean_input(lowered));
  return pc;
}

double geometric_mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double acc = 0.0;
  for (double x : xs) {
    if (!(x > 0.0)) return 0.0;
    acc += std::log(x);
  }
  return std::exp(acc / static_cast<double>(xs.size()));
}

}  // namespace

std::shared_ptr<const CoverageSet> coverage_for(const BasisGateSpec& basis, bool mirror,
                                                const CommonOptions& common) {
  const fs::path file =
      resolve_cache_dir(common) /
      ("coverage-n" + std::to_string(basis.n) + (mirror ? "-mirror" : "-std") + "-s" +
       std::to_string(common.coverage_seed) + "-m" + std::to_string(common.coverage_samples) +
       ".bin");
  return std::make_shared<const CoverageSet>(load_or_build_coverage(
      file, basis, mirror, common.coverage_samples, common.coverage_seed));
}

json cmd_transpile(const TranspileOptions& o) {
  const auto start = Clock::now();
  const BasisGateSpec basis = BasisGateSpec::parse(o.basis);
  const RoutingMode mode = parse_routing_mode(o.mode);
  const TrialPlan plan = make_plan(o.trials, o.aggression, o.metric);
  const CouplingMap cm = CouplingMap::parse(o.topology);
  if (o.verify && cm.num_qubits() > kMaxSimQubits)
    throw Error(ErrorCode::Usage, "--verify is limited to " + std::to_string(kMaxSimQubits) +
                                      " qubits");

  const PreparedCircuit pc = prepare(o.input);
  const CostLookup lookup(coverage_for(basis, false, o.common));
  std::vector<TrialSummary> trials;
  RoutedResult best = run_trials(pc.logical, cm, plan, SabreParams{}, lookup,
                                 {mode, o.kappa, o.seed, o.common.jobs}, &trials);

  json rec;
  rec["name"] = o.input.stem().string();
  rec["qubits"] = pc.logical.num_qubits();
  rec["input_two_q_count"] = pc.input_two_q;
  rec["metrics"] = metrics_json(best.metrics);
  rec["mirror_acceptance_rate"] = best.mirror_acceptance_rate;
  rec["selected_trial"] = best.trial;
  rec["selected_aggression"] = best.aggression;
  rec["initial_layout"] = best.initial.virtual_to_physical();
  rec["final_layout"] = best.final.virtual_to_physical();
  json per_trial = json::array();
  for (const TrialSummary& t : trials)
    per_trial.push_back({{"trial", t.trial},
                         {"aggression", t.aggression},
                         {"metrics", metrics_json(t.metrics)},
                         {"mirror_acceptance_rate", t.mirror_acceptance_rate}});
  rec["trials"] = std::move(per_trial);
  if (o.verify)
    rec["verified"] = routing_equivalent(pc.logical, best.mapped,
                                         best.initial.virtual_to_physical(),
                                         best.final.virtual_to_physical(), 1e-9);
  if (!o.emit_qasm.empty()) {
    SerializeOptions so;
    so.synth = o.synth;
    so.lookup = &lookup;
    write_file_atomic(o.emit_qasm, serialize_qasm(best.mapped, basis, so));
  }

  json r = base_report("transpile");
  r["seed"] = o.seed;
  r["options"] = {{"topology", cm.name()}, {"basis", basis.name},     {"mode", o.mode},
                  {"metric", o.metric},    {"trials", o.trials},      {"aggression", o.aggression},
                  {"kappa", o.kappa}};
  r["records"] = json::array({rec});
  r["wall_clock_s"] = seconds_since(start);
  return r;
}

json cmd_score(const ScoreOptions& o) {
  const auto start = Clock::now();
  if (o.samples == 0) throw Error(ErrorCode::Usage, "--samples must be positive");
  const BasisGateSpec basis = BasisGateSpec::parse(o.basis);
  const auto cs = coverage_for(basis, o.mirror, o.common);
  const HaarScoreReport h = o.approx ? haar_score_approx(*cs, o.samples, o.seed, o.common.jobs)
                                     : haar_score_exact(*cs, o.samples, o.seed, o.common.jobs);
  json r = base_report("score");
  r["seed"] = o.seed;
  r["records"] = json::array({{{"basis", h.basis},
                               {"mode", h.mode},
                               {"mirror", o.mirror},
                               {"approx", o.approx},
                               {"score", h.score},
                               {"avg_fidelity", h.avg_fidelity},
                               {"samples", h.samples},
                               {"std_error", h.std_error}}});
  r["wall_clock_s"] = seconds_since(start);
  return r;
}

json cmd_coverage(const CoverageOptions& o) {
  const auto start = Clock::now();
  if (o.samples == 0) throw Error(ErrorCode::Usage, "--samples must be positive");
  if (o.k < 0) throw Error(ErrorCode::Usage, "--k must be non-negative");
  const BasisGateSpec basis = BasisGateSpec::parse(o.basis);
  const auto cs = coverage_for(basis, o.mirror, o.common);
  const std::size_t index = std::min<std::size_t>(static_cast<std::size_t>(o.k),
                                                  cs->entries.size() - 1);
  Rng rng = make_rng(o.seed, /*stream=*/3);
  const VolumeEstimate v = haar_volume(cs->entries[index], o.samples, rng);
  json r = base_report("coverage");
  r["seed"] = o.seed;
  r["records"] = json::array({{{"basis", basis.name},
                               {"k", o.k},
                               {"cost", o.k * basis.unit_cost()},
                               {"mirror", o.mirror},
                               {"volume", v.fraction},
                               {"std_error", v.std_error},
                               {"samples", v.samples}}});
  r["wall_clock_s"] = seconds_since(start);
  return r;
}

json cmd_bench(const BenchOptions& o) {
  const auto start = Clock::now();
  const fs::path manifest_path = o.suite / "manifest.json";
  if (!fs::exists(manifest_path))
    throw Error(ErrorCode::Usage, "suite has no manifest.json: " + o.suite.string());
  json manifest;
  {
    std::ifstream in(manifest_path);
    try {
      manifest = json::parse(in);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Usage, std::string("bad manifest: ") + e.what());
    }
  }
  if (o.seeds < 1 || o.trials < 1) throw Error(ErrorCode::Usage, "--seeds/--trials must be >= 1");

  struct ModeSpec {
    std::string label;
    RoutingMode mode;
    TrialMetric metric;
  };
  std::vector<ModeSpec> modes;
  {
    std::stringstream ss(o.modes);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      const auto colon = tok.find(':');
      const std::string m = tok.substr(0, colon);
      const std::string metric = colon == std::string::npos ? "depth" : tok.substr(colon + 1);
      modes.push_back({tok, parse_routing_mode(m), parse_trial_metric(metric)});
    }
  }
  if (modes.empty()) throw Error(ErrorCode::Usage, "--modes is empty");

  const BasisGateSpec basis = BasisGateSpec::parse(o.basis);
  const CouplingMap cm = CouplingMap::parse(o.topology);
  const CostLookup lookup(coverage_for(basis, false, o.common));

  json records = json::array();
  std::map<std::string, std::vector<double>> per_mode_depth;
  std::map<std::string, std::vector<double>> per_mode_total;
  std::map<std::string, std::vector<double>> per_mode_swaps;
  for (const json& entry : manifest.value("circuits", json::array())) {
    json rec;
    rec["name"] = entry.value("name", entry.value("file", std::string("?")));
    try {
      const PreparedCircuit pc = prepare(o.suite / entry.at("file").get<std::string>());
      rec["qubits"] = pc.logical.num_qubits();
      rec["input_two_q_count"] = pc.input_two_q;
      json per_mode = json::object();
      std::map<std::string, std::array<double, 3>> summary;
      for (const ModeSpec& ms : modes) {
        TrialPlan plan;
        plan.total_trials = o.trials;
        plan.metric = ms.metric;
        std::vector<double> depth, total, swaps, acceptance;
        for (int s = 0; s < o.seeds; ++s) {
          const RoutedResult r =
              run_trials(pc.logical, cm, plan, SabreParams{}, lookup,
                         {ms.mode, o.kappa, o.seed + static_cast<std::uint64_t>(s), o.common.jobs});
          depth.push_back(r.metrics.pulse_depth);
          total.push_back(r.metrics.total_cost);
          swaps.push_back(static_cast<double>(r.metrics.swap_count));
          acceptance.push_back(r.mirror_acceptance_rate);
        }
        double mean_swaps = 0.0;
        for (double x : swaps) mean_swaps += x / static_cast<double>(swaps.size());
        summary[ms.label] = {geometric_mean(depth), geometric_mean(total), mean_swaps};
        per_mode[ms.label] = {{"pulse_depth", depth},
                              {"total_cost", total},
                              {"swap_count", swaps},
                              {"mirror_acceptance_rate", acceptance},
                              {"geomean_pulse_depth", summary[ms.label][0]},
                              {"geomean_total_cost", summary[ms.label][1]},
                              {"mean_swap_count", mean_swaps}};
      }
      rec["modes"] = std::move(per_mode);
      for (const auto& [label, s] : summary) {
        per_mode_depth[label].push_back(s[0]);
        per_mode_total[label].push_back(s[1]);
        per_mode_swaps[label].push_back(s[2]);
      }
    } catch (const std::exception& e) {
      rec["error"] = error_json(e);
    }
    records.push_back(std::move(rec));
  }

  json summary = json::object();
  const std::string& baseline = modes.front().label;
  for (const ModeSpec& ms : modes) {
    const double gd = geometric_mean(per_mode_depth[ms.label]);
    const double gt = geometric_mean(per_mode_total[ms.label]);
    double ms_mean = 0.0;
    for (double x : per_mode_swaps[ms.label])
      ms_mean += x / static_cast<double>(per_mode_swaps[ms.label].size());
    json s = {{"geomean_pulse_depth", gd},
              {"geomean_total_cost", gt},
              {"mean_swap_count", ms_mean},
              {"circuits", per_mode_depth[ms.label].size()}};
    const double bd = geometric_mean(per_mode_depth[baseline]);
    const double bt = geometric_mean(per_mode_total[baseline]);
    s["depth_change_vs_" + baseline] = bd > 0.0 ? gd / bd - 1.0 : 0.0;
    s["total_change_vs_" + baseline] = bt > 0.0 ? gt / bt - 1.0 : 0.0;
    summary[ms.label] = std::move(s);
  }

  json r = base_report("bench");
  r["seed"] = o.seed;
  r["options"] = {{"topology", cm.name()}, {"basis", basis.name}, {"modes", o.modes},
                  {"seeds", o.seeds},      {"trials", o.trials},  {"kappa", o.kappa}};
  r["records"] = std::move(records);
  r["summary"] = std::move(summary);
  r["wall_clock_s"] = seconds_since(start);
  return r;
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

json strip_timing(json report) {
  report.erase("wall_clock_s");
  return report;
}

namespace {

void add_common(CLI::App* app, CommonOptions& c) {
  app->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--cache-dir", c.cache_dir, "Coverage sidecar directory");
  app->add_option("--coverage-samples", c.coverage_samples, "Samples per k for coverage builds");
  app->add_option("--coverage-seed", c.coverage_seed, "Seed for coverage builds");
}

bool parse_on_off(const std::string& v, const char* flag) {
  if (v == "on") return true;
  if (v == "off") return false;
  throw Error(ErrorCode::Usage, std::string(flag) + " takes on|off");
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"MIRAGE transpiler: mirror-gate aware routing and basis-gate costing"};
  app.set_version_flag("--version", MIRAGE_VERSION);
  app.require_subcommand(1);
  fs::path out;

  TranspileOptions t;
  std::string t_synth = "on";
  auto* tr = app.add_subcommand("transpile", "Route a QASM circuit onto a topology");
  tr->add_option("--input", t.input, "OpenQASM 2 file")->required();
  tr->add_option("--topology", t.topology, "line:N | ring:N | grid:RxC | file:PATH");
  tr->add_option("--basis", t.basis, "sqiswap | iswap | niswap:N");
  tr->add_option("--mode", t.mode, "sabre | mirage | vswap");
  tr->add_option("--metric", t.metric, "depth | swaps");
  tr->add_option("--trials", t.trials, "Routing trials");
  tr->add_option("--aggression", t.aggression, "mixed | 0 | 1 | 2 | 3");
  tr->add_option("--seed", t.seed);
  tr->add_option("--kappa", t.kappa, "Pulse cost to hop exchange rate");
  tr->add_option("--out", out, "JSON report path");
  tr->add_option("--emit-qasm", t.emit_qasm, "Write the routed circuit");
  tr->add_option("--synth", t_synth, "on | off: expand blocks into basis gates when emitting");
  tr->add_flag("--verify", t.verify, "Simulate and compare against the input");
  add_common(tr, t.common);

  ScoreOptions s;
  std::string s_mirror = "off", s_approx = "off";
  auto* sc = app.add_subcommand("score", "Haar score of a basis gate");
  sc->add_option("--basis", s.basis);
  sc->add_option("--samples", s.samples);
  sc->add_option("--mirror", s_mirror, "on | off");
  sc->add_option("--approx", s_approx, "on | off");
  sc->add_option("--seed", s.seed);
  sc->add_option("--out", out);
  add_common(sc, s.common);

  CoverageOptions c;
  std::string c_mirror = "off";
  auto* cv = app.add_subcommand("coverage", "Haar volume covered at depth k");
  cv->add_option("--basis", c.basis);
  cv->add_option("--k", c.k);
  cv->add_option("--mirror", c_mirror, "on | off");
  cv->add_option("--samples", c.samples);
  cv->add_option("--seed", c.seed);
  cv->add_option("--out", out);
  add_common(cv, c.common);

  BenchOptions b;
  auto* be = app.add_subcommand("bench", "Run a benchmark suite under several modes");
  be->add_option("--suite", b.suite, "Directory with manifest.json")->required();
  be->add_option("--topology", b.topology);
  be->add_option("--modes", b.modes, "e.g. sabre,mirage,mirage:swaps");
  be->add_option("--basis", b.basis);
  be->add_option("--seed", b.seed, "First seed");
  be->add_option("--seeds", b.seeds, "Consecutive seeds per circuit");
  be->add_option("--trials", b.trials);
  be->add_option("--kappa", b.kappa);
  be->add_option("--out", out);
  add_common(be, b.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::string echo;
  for (int i = 1; i < argc; ++i) echo += (i > 1 ? " " : "") + std::string(argv[i]);

  json report;
  int code = 0;
  try {
    if (tr->parsed()) {
      t.synth = parse_on_off(t_synth, "--synth");
      report = cmd_transpile(t);
      const json& rec = report["records"][0];
      if (rec.contains("verified") && !rec["verified"].get<bool>()) code = 3;
    } else if (sc->parsed()) {
      s.mirror = parse_on_off(s_mirror, "--mirror");
      s.approx = parse_on_off(s_approx, "--approx");
      report = cmd_score(s);
    } else if (cv->parsed()) {
      c.mirror = parse_on_off(c_mirror, "--mirror");
      report = cmd_coverage(c);
    } else {
      report = cmd_bench(b);
    }
  } catch (const std::exception& e) {
    report = base_report(app.get_subcommands().front()->get_name());
    report["error"] = error_json(e);
    const auto* me = dynamic_cast<const Error*>(&e);
    code = me && me->code() == ErrorCode::Usage ? 2 : 1;
    std::cerr << "mirage: " << e.what() << "\n";
  }
  report["argv"] = echo;
  const std::string text = report.dump(2) + "\n";
  try {
    if (out.empty()) {
      std::cout << text;
    } else {
      write_file_atomic(out, text);
    }
  } catch (const std::exception& e) {
    std::cerr << "mirage: " << e.what() << "\n";
    return 1;
  }
  return code;
}

}  // namespace mirage::cli
