// dwpe/dwpe_cli.cc

// Copyright 2026 The dwpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   dwpe simulate  render a scenario into per-node observation WAVs
//   dwpe dereverb  run single, centralized or distributed WPE on them
//   dwpe evaluate  score estimates against the early-reverberation targets
//   dwpe report    transmission counts, reduction factors, convergence CSVs
//
// Every verb takes --config FILE with flat `key = value` lines whose keys
// are the long option names; unknown keys are rejected. DWPE_OUTPUT_DIR,
// when set, replaces --output-dir.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dwpe/complexity.h"
#include "dwpe/error.h"
#include "dwpe/netsim.h"
#include "dwpe/pipeline.h"
#include "dwpe/scenario-io.h"
#include "dwpe/synth.h"
#include "dwpe/wav.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace dwpe {
namespace {

enum ExitCode { kOk = 0, kExitConfig = 2, kExitIo = 3, kExitNumerical = 4 };

struct RunConfig {
  std::string scenario_path;  // empty: the built-in 12-node room
  int num_nodes = 0;          // 0: every node of the scenario
  std::string mode = "distributed";
  WpeParams params;
  double psd_floor_rel = 1e-8;
  int collab_period = 2;
  std::vector<NodeId> report_nodes;  // empty: the scenario's own
  std::string output_dir = "dwpe-out";
  std::uint64_t seed = 1;
  double seconds = 10.0;
  std::string clean_path;  // empty: synthetic speech from `seed`
  std::string manifest;    // empty: <output_dir>/manifest.json
  std::vector<std::string> runs;
  bool sync = true;
  int max_lag = 2000;
};

std::string OutputDir(const RunConfig &c) {
  const char *env = std::getenv("DWPE_OUTPUT_DIR");
  return env && *env ? std::string(env) : c.output_dir;
}

std::string ManifestPath(const RunConfig &c) {
  return c.manifest.empty() ? (fs::path(OutputDir(c)) / "manifest.json").string()
                            : c.manifest;
}

// FNV-1a over the canonical parameter string.
std::string Fingerprint(const RunConfig &c) {
  std::ostringstream os;
  os << std::setprecision(17) << "tau=" << c.params.tau
     << ";L=" << c.params.filter_order << ";eps_rel=" << c.psd_floor_rel
     << ";iters=" << c.params.max_iters << ";tol=" << c.params.convergence_tol
     << ";ridge=" << c.params.ridge_scale << ";a=" << c.collab_period
     << ";sync=" << c.sync << ";max_lag=" << c.max_lag;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

std::string NodeLabel(const std::vector<NodeId> &report, NodeId n) {
  for (std::size_t i = 0; i < report.size(); ++i)
    if (report[i] == n && i < 26) return std::string(1, static_cast<char>('A' + i));
  return "";
}

std::string NodeFile(const char *stem, NodeId n) {
  std::ostringstream os;
  os << stem << '_' << std::setw(2) << std::setfill('0') << n << ".wav";
  return os.str();
}

json ReadJson(const std::string &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    Fail(ErrorKind::kIo, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void WriteText(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) Fail(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) Fail(ErrorKind::kIo, "write failed for '" + path.string() + "'");
}

fs::path PrepareDir(const RunConfig &c) {
  fs::path dir = OutputDir(c);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    Fail(ErrorKind::kIo, "cannot create '" + dir.string() + "': " + ec.message());
  return dir;
}

RoomScenario ResolveScenario(const RunConfig &c) {
  RoomScenario s =
      c.scenario_path.empty() ? DefaultScenario() : LoadScenario(c.scenario_path);
  if (c.num_nodes > 0) s = Subnetwork(s, c.num_nodes);
  if (!c.report_nodes.empty()) {
    s.report_nodes = c.report_nodes;
    try {
      s.Validate();
    } catch (const Error &e) {
      Fail(ErrorKind::kConfig, e.what());
    }
  }
  return s;
}

WindowSpec CheckedWindow(double fs) { return WindowSpec::ForSampleRate(fs); }

// ---------------------------------------------------------------- simulate

int CmdSimulate(const RunConfig &c) {
  const RoomScenario scenario = ResolveScenario(c);
  std::vector<double> clean;
  if (c.clean_path.empty()) {
    clean = SyntheticSpeech(c.seconds, scenario.sample_rate, c.seed);
  } else {
    WavData wav = ReadWav(c.clean_path);
    if (wav.sample_rate != scenario.sample_rate)
      Fail(ErrorKind::kInvalidInput,
           "'" + c.clean_path + "' is sampled at " +
               std::to_string(wav.sample_rate) + " Hz, scenario expects " +
               std::to_string(scenario.sample_rate) + " Hz");
    clean = std::move(wav.samples);
  }
  const Scene scene =
      SimulateScene(scenario, clean, scenario.sample_rate, c.params.threads);
  const fs::path dir = PrepareDir(c);
  const double fs = scenario.sample_rate;

  json files = {{"clean", "clean.wav"},
                {"observations", json::array()},
                {"references", json::array()},
                {"rirs", json::array()}};
  WriteWav((dir / "clean.wav").string(), scene.clean, fs);
  for (int i = 0; i < scenario.num_nodes(); ++i) {
    const std::string obs = NodeFile("obs", i);
    const std::string ref = NodeFile("ref", i);
    const std::string rir = NodeFile("rir", i);
    WriteWav((dir / obs).string(), scene.observations[i], fs);
    WriteWav((dir / ref).string(), scene.references[i], fs);
    WriteWav((dir / rir).string(), scene.rirs[i].taps, fs);
    files["observations"].push_back(obs);
    files["references"].push_back(ref);
    files["rirs"].push_back(rir);
  }
  json manifest = {
      {"scenario_id", scenario.name},
      {"num_nodes", scenario.num_nodes()},
      {"sample_rate", fs},
      {"seed", c.seed},
      {"clean_source", c.clean_path.empty() ? "synthetic" : c.clean_path},
      {"t60_target", scenario.t60_target},
      {"t60_estimates", scene.t60_estimates},
      {"early_boundaries", scene.early_boundaries},
      {"report_nodes", scenario.report_nodes},
      {"scenario", json::parse(ScenarioToJson(scenario))},
      {"files", files}};
  WriteText(dir / "manifest.json", manifest.dump(2) + "\n");
  std::cerr << "simulate: " << scenario.num_nodes() << " nodes written to "
            << dir.string() << "\n";
  return kOk;
}

// Loaded simulate output: paths are resolved against the manifest folder.
struct LoadedManifest {
  json doc;
  fs::path dir;
  std::string scenario_id;
  double sample_rate = 0;
  std::vector<NodeId> report_nodes;
  std::vector<std::vector<double>> observations;
};

LoadedManifest LoadManifest(const std::string &path) {
  LoadedManifest m;
  m.doc = ReadJson(path);
  m.dir = fs::path(path).parent_path();
  try {
    m.scenario_id = m.doc.at("scenario_id").get<std::string>();
    m.sample_rate = m.doc.at("sample_rate").get<double>();
    m.report_nodes = m.doc.at("report_nodes").get<std::vector<NodeId>>();
    for (const auto &f : m.doc.at("files").at("observations")) {
      WavData w = ReadWav((m.dir / f.get<std::string>()).string());
      if (w.sample_rate != m.sample_rate)
        Fail(ErrorKind::kInvalidInput,
             "'" + f.get<std::string>() + "' has an unexpected sample rate");
      m.observations.push_back(std::move(w.samples));
    }
  } catch (const json::exception &e) {
    Fail(ErrorKind::kIo, "manifest '" + path + "' is incomplete: " + e.what());
  }
  return m;
}

// ---------------------------------------------------------------- dereverb

int CmdDereverb(const RunConfig &c) {
  const Mode mode = ParseMode(c.mode);
  const LoadedManifest m = LoadManifest(ManifestPath(c));
  const int num_nodes = static_cast<int>(m.observations.size());
  CheckedWindow(m.sample_rate);

  DereverbOptions opt;
  opt.mode = mode;
  opt.params = c.params;
  opt.collab_period = c.collab_period;
  opt.psd_floor_rel = c.psd_floor_rel;
  opt.synchronize = c.sync;
  opt.max_lag = c.max_lag;
  opt.nodes = c.report_nodes.empty() ? m.report_nodes : c.report_nodes;
  if (opt.nodes.empty())
    for (NodeId i = 0; i < num_nodes; ++i) opt.nodes.push_back(i);

  const DereverbOutput out = RunDereverb(m.observations, m.sample_rate, opt);
  if (!out.converged)
    std::cerr << "warning: " << ModeName(mode) << " run stopped at "
              << out.rounds << " iterations without reaching tolerance "
              << c.params.convergence_tol << "\n";

  const fs::path dir = PrepareDir(c);
  const std::string fp = Fingerprint(c);
  const std::string mode_name = ModeName(mode);
  const std::string prefix_header = "scenario,mode,fingerprint,";
  const std::string prefix = m.scenario_id + "," + mode_name + "," + fp + ",";

  json estimates = json::object();
  for (const auto &[n, y] : out.estimates) {
    const std::string name = NodeFile(("est_" + mode_name).c_str(), n);
    WriteWav((dir / name).string(), y, m.sample_rate);
    estimates[std::to_string(n)] = name;
  }

  std::ostringstream conv;
  conv << std::setprecision(10);
  out.trace.WriteCsv(conv, prefix_header, prefix);
  const std::string conv_name = "convergence_" + mode_name + ".csv";
  WriteText(dir / conv_name, conv.str());

  // Per receiving node: total scalars, and the count per frame, per bin and
  // per round that carried traffic.
  std::ostringstream tx;
  tx << prefix_header
     << "node,received_units,frames,bins,active_rounds,per_frame_bin\n";
  const auto active = out.ledger.ActiveRounds();
  const double denom = static_cast<double>(out.frames) * out.bins *
                       std::max<std::size_t>(active.size(), 1);
  for (NodeId n = 0; n < num_nodes; ++n) {
    const std::int64_t units = out.ledger.ReceivedBy(n);
    if (units == 0) continue;
    tx << prefix << n << ',' << units << ',' << out.frames << ',' << out.bins
       << ',' << active.size() << ',' << static_cast<double>(units) / denom
       << '\n';
  }
  const std::string tx_name = "ledger_" + mode_name + ".csv";
  WriteText(dir / tx_name, tx.str());

  json run = {{"scenario_id", m.scenario_id},
              {"manifest", fs::absolute(ManifestPath(c)).string()},
              {"mode", mode_name},
              {"fingerprint", fp},
              {"rounds", out.rounds},
              {"converged", out.converged},
              {"lags", out.lags},
              {"report_nodes", opt.nodes},
              {"estimates", estimates},
              {"convergence_csv", conv_name},
              {"ledger_csv", tx_name}};
  WriteText(dir / ("run_" + mode_name + ".json"), run.dump(2) + "\n");
  std::cerr << "dereverb: " << mode_name << ", " << out.rounds
            << " iterations, " << out.estimates.size() << " outputs\n";
  return kOk;
}

// ---------------------------------------------------------------- evaluate

std::vector<std::string> RunFiles(const RunConfig &c) {
  if (!c.runs.empty()) return c.runs;
  std::vector<std::string> found;
  for (const char *mode : {"single", "centralized", "distributed"}) {
    fs::path p = fs::path(OutputDir(c)) / (std::string("run_") + mode + ".json");
    if (fs::exists(p)) found.push_back(p.string());
  }
  return found;
}

int CmdEvaluate(const RunConfig &c) {
  const std::string manifest_path = ManifestPath(c);
  const json doc = ReadJson(manifest_path);
  const fs::path mdir = fs::path(manifest_path).parent_path();
  const double fs = doc.at("sample_rate").get<double>();
  const std::string scenario_id = doc.at("scenario_id").get<std::string>();
  const auto refs = doc.at("files").at("references");
  const auto obs = doc.at("files").at("observations");
  std::vector<NodeId> report = doc.at("report_nodes").get<std::vector<NodeId>>();
  if (!c.report_nodes.empty()) report = c.report_nodes;

  const auto runs = RunFiles(c);
  if (runs.empty())
    Fail(ErrorKind::kIo, "no dereverb runs found in '" + OutputDir(c) + "'");

  auto load = [&](const fs::path &dir, const std::string &name) {
    return ReadWav((dir / name).string()).samples;
  };
  auto check_len = [](NodeId n, const std::vector<double> &a,
                      const std::vector<double> &b) {
    if (a.size() != b.size())
      Fail(ErrorKind::kInvalidInput,
           "node " + std::to_string(n) + ": estimate has " +
               std::to_string(b.size()) + " samples, reference " +
               std::to_string(a.size()));
  };

  std::ostringstream csv;
  csv << std::setprecision(8)
      << "scenario,mode,fingerprint,node,label,cd,fsnr\n";
  auto row = [&](const std::string &mode, const std::string &fp,
                 const std::string &node, const std::string &label,
                 const MetricReport &r) {
    csv << scenario_id << ',' << mode << ',' << fp << ',' << node << ','
        << label << ',' << r.cd << ',' << r.fsnr << '\n';
  };

  std::map<NodeId, std::vector<double>> references;
  bool wrote_unprocessed = false;
  for (const auto &run_path : runs) {
    const json run = ReadJson(run_path);
    const fs::path rdir = fs::path(run_path).parent_path();
    const std::string mode = run.at("mode").get<std::string>();
    const std::string fp = run.at("fingerprint").get<std::string>();
    std::vector<NodeId> nodes;
    for (NodeId n : report)
      if (run.at("estimates").contains(std::to_string(n))) nodes.push_back(n);
    if (nodes.empty())
      Fail(ErrorKind::kInvalidInput,
           "run '" + run_path + "' has no estimate for any reported node");

    for (NodeId n : nodes)
      if (!references.count(n)) {
        if (n < 0 || n >= static_cast<int>(refs.size()))
          Fail(ErrorKind::kInvalidInput,
               "no reference for node " + std::to_string(n));
        references[n] = load(mdir, refs[n].get<std::string>());
      }

    if (!wrote_unprocessed) {
      MetricReport mean;
      for (NodeId n : nodes) {
        auto x = load(mdir, obs[n].get<std::string>());
        check_len(n, references[n], x);
        MetricReport r = Evaluate(references[n], x, fs);
        row("unprocessed", fp, std::to_string(n), NodeLabel(report, n), r);
        mean.cd += r.cd / nodes.size();
        mean.fsnr += r.fsnr / nodes.size();
      }
      row("unprocessed", fp, "mean", "", mean);
      wrote_unprocessed = true;
    }

    MetricReport mean;
    for (NodeId n : nodes) {
      auto y = load(rdir, run["estimates"][std::to_string(n)].get<std::string>());
      check_len(n, references[n], y);
      MetricReport r = Evaluate(references[n], y, fs);
      row(mode, fp, std::to_string(n), NodeLabel(report, n), r);
      mean.cd += r.cd / nodes.size();
      mean.fsnr += r.fsnr / nodes.size();
    }
    row(mode, fp, "mean", "", mean);
  }
  const fs::path dir = PrepareDir(c);
  WriteText(dir / "evaluation.csv", csv.str());
  std::cout << csv.str();
  return kOk;
}

// ------------------------------------------------------------------ report

struct NetworkSet {
  const char *name;
  int filter_order;
  std::vector<int> sizes;
};

int CmdReport(const RunConfig &c) {
  std::vector<NetworkSet> sets = {{"simulated", 26, {6, 9, 12}},
                                  {"real", 40, {4, 6, 8}}};
  if (c.num_nodes > 1 &&
      !(c.params.filter_order == 26 || c.params.filter_order == 40))
    sets.push_back({"configured", c.params.filter_order, {c.num_nodes}});
  const fs::path dir = PrepareDir(c);
  const std::string fp = Fingerprint(c);

  std::ostringstream tx, red, beta;
  tx << "scenario,mode,fingerprint,num_nodes,filter_order,dimension,"
        "transmissions\n";
  red << "scenario,mode,fingerprint,num_nodes,filter_order,"
         "centralized,distributed,reduction_percent\n";
  beta << std::setprecision(6)
       << "scenario,mode,fingerprint,num_nodes,filter_order,beta_mul,beta_div,"
          "beta_solve,beta_mul_network,beta_div_network,exact_mul,exact_div,"
          "exact_solve,cubic_solve\n";
  for (const auto &set : sets) {
    for (int m : set.sizes) {
      for (Mode mode : {Mode::kCentralized, Mode::kDistributed}) {
        tx << set.name << ',' << ModeName(mode) << ',' << fp << ',' << m << ','
           << set.filter_order << ','
           << SolveDimension(mode, m, set.filter_order) << ','
           << CountTransmissions(mode, m, set.filter_order) << '\n';
      }
      red << set.name << ",distributed," << fp << ',' << m << ','
          << set.filter_order << ','
          << CountTransmissions(Mode::kCentralized, m, set.filter_order) << ','
          << CountTransmissions(Mode::kDistributed, m, set.filter_order) << ','
          << std::fixed << std::setprecision(2)
          << 100.0 * TransmissionReduction(m, set.filter_order)
          << std::defaultfloat << '\n';
      // Frame count only enters the exact ratios, where it cancels.
      const BetaReport b = ComputeBetaReport(m, set.filter_order, 1);
      beta << set.name << ",distributed," << fp << ',' << m << ','
           << set.filter_order << ',' << b.beta_mul << ',' << b.beta_div << ','
           << b.beta_solve << ',' << b.beta_mul_network << ','
           << b.beta_div_network << ',' << b.exact_mul << ',' << b.exact_div
           << ',' << b.exact_solve << ',' << b.cubic_solve << '\n';
    }
  }
  WriteText(dir / "transmissions.csv", tx.str());
  WriteText(dir / "reduction.csv", red.str());
  WriteText(dir / "beta.csv", beta.str());

  // Convergence traces of completed runs, concatenated.
  std::ostringstream conv;
  bool header = false;
  for (const auto &run_path : RunFiles(c)) {
    const json run = ReadJson(run_path);
    const fs::path src =
        fs::path(run_path).parent_path() /
        run.at("convergence_csv").get<std::string>();
    std::ifstream in(src);
    if (!in) Fail(ErrorKind::kIo, "cannot open '" + src.string() + "'");
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (first) {
        first = false;
        if (header) continue;
        header = true;
      }
      conv << line << '\n';
    }
  }
  if (header) WriteText(dir / "convergence.csv", conv.str());

  std::cout << tx.str() << '\n' << red.str() << '\n' << beta.str();
  return kOk;
}

// ------------------------------------------------------------------ wiring

void AddCommon(CLI::App *app, RunConfig &c, std::string &config_path) {
  app->add_option("--config", config_path,
                  "flat key = value file of option values");
  app->add_option("--output-dir", c.output_dir,
                  "output folder (DWPE_OUTPUT_DIR overrides)");
  app->add_option("--scenario", c.scenario_path,
                  "scenario JSON (default: built-in 12-node room)");
  app->add_option("--num-nodes", c.num_nodes,
                  "use the first N microphones of the scenario")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--report-nodes", c.report_nodes, "nodes to report")
      ->delimiter(',');
  app->add_option("--manifest", c.manifest,
                  "simulate manifest (default: <output-dir>/manifest.json)");
  app->add_option("--mode", c.mode, "single | centralized | distributed")
      ->check(CLI::IsMember({"single", "centralized", "distributed"}));
  app->add_option("--tau", c.params.tau, "prediction delay, frames");
  app->add_option("--filter-order", c.params.filter_order, "taps per channel");
  app->add_option("--psd-floor", c.psd_floor_rel,
                  "PSD floor relative to the mean observation power");
  app->add_option("--max-iters", c.params.max_iters, "iteration cap");
  app->add_option("--tol", c.params.convergence_tol,
                  "relative-change stopping threshold");
  app->add_option("--ridge", c.params.ridge_scale,
                  "diagonal loading, relative to trace(Z) / dim");
  app->add_option("--collab-period", c.collab_period,
                  "iterations between compressor broadcasts");
  app->add_option("--threads", c.params.threads, "worker threads, 0 = all");
  app->add_option("--seed", c.seed, "seed for the synthetic clean signal");
  app->add_option("--seconds", c.seconds, "length of the synthetic signal");
  app->add_option("--clean", c.clean_path, "clean speech WAV (mono)");
  app->add_option("--run", c.runs, "dereverb run JSON (repeatable)");
  app->add_option("--max-lag", c.max_lag, "synchronization search range");
  app->add_flag("--sync,!--no-sync", c.sync, "GCC-PHAT alignment");
}

std::string Trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Applies `key = value` lines to options not already given on the command
// line. Blank lines and lines starting with '#' or ';' are skipped; values
// may be double-quoted.
void ApplyConfigFile(CLI::App *app, const std::string &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open config '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto eq = t.find('=');
    const std::string where = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      Fail(ErrorKind::kConfig, where + ": expected key = value");
    const std::string key = Trim(t.substr(0, eq));
    std::string value = Trim(t.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    CLI::Option *opt =
        key == "config" ? nullptr : app->get_option_no_throw("--" + key);
    if (!opt) Fail(ErrorKind::kConfig, where + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    try {
      if (opt->get_expected_max() > 1) {
        std::stringstream parts(value);
        std::string item;
        while (std::getline(parts, item, ','))
          opt->add_result(Trim(item));
      } else {
        opt->add_result(value);
      }
      opt->run_callback();
    } catch (const CLI::Error &e) {
      Fail(ErrorKind::kConfig, where + ": bad value for '" + key + "': " +
                                   e.what());
    }
  }
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kInvalidInput: return kExitConfig;
    case ErrorKind::kIo: return kExitIo;
    default: return kExitNumerical;
  }
}

int Main(int argc, char **argv) {
  CLI::App app{"distributed weighted-prediction-error dereverberation"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;
  struct Verb {
    const char *name;
    const char *help;
    int (*fn)(const RunConfig &);
  };
  const Verb verbs[] = {
      {"simulate", "render per-node reverberant observations", CmdSimulate},
      {"dereverb", "dereverberate a simulated or recorded set", CmdDereverb},
      {"evaluate", "cepstral distance and F-SNR per node", CmdEvaluate},
      {"report", "transmission, complexity and convergence tables", CmdReport},
  };
  for (const auto &v : verbs) AddCommon(app.add_subcommand(v.name, v.help), cfg, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kExitConfig;
  }
  CLI::App *sub = app.get_subcommands().front();
  try {
    if (!config_path.empty()) ApplyConfigFile(sub, config_path);
    if (cfg.collab_period < 1)
      Fail(ErrorKind::kConfig, "--collab-period must be >= 1");
    try {
      cfg.params.Validate();
    } catch (const Error &e) {
      Fail(ErrorKind::kConfig, e.what());
    }
    for (const auto &v : verbs)
      if (sub->get_name() == v.name) return v.fn(cfg);
  } catch (const Error &e) {
    std::cerr << "dwpe " << sub->get_name() << ": " << ErrorKindName(e.kind())
              << " error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const json::exception &e) {
    std::cerr << "dwpe " << sub->get_name() << ": io error: " << e.what()
              << "\n";
    return kExitIo;
  }
  return kExitConfig;
}

}  // namespace
}  // namespace dwpe

int main(int argc, char **argv) { return dwpe::Main(argc, argv); }
