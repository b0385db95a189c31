// dwpe/pipeline.cc

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

#include "dwpe/pipeline.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "dwpe/error.h"

namespace dwpe {

RoomScenario Subnetwork(const RoomScenario &scenario, int num_nodes) {
  Require(num_nodes >= 1 && num_nodes <= scenario.num_nodes(),
          ErrorKind::kConfig,
          "cannot take " + std::to_string(num_nodes) + " nodes from a " +
              std::to_string(scenario.num_nodes()) + "-node scenario");
  RoomScenario out = scenario;
  out.mic_positions.resize(num_nodes);
  std::erase_if(out.report_nodes, [&](NodeId n) { return n >= num_nodes; });
  if (num_nodes != scenario.num_nodes())
    out.name = scenario.name + "-m" + std::to_string(num_nodes);
  return out;
}

Scene SimulateScene(const RoomScenario &scenario,
                    std::span<const double> clean, double clean_sample_rate,
                    unsigned threads) {
  scenario.Validate();
  Require(!clean.empty(), ErrorKind::kInvalidInput, "clean signal is empty");
  Require(clean_sample_rate == scenario.sample_rate, ErrorKind::kInvalidInput,
          "clean signal sample rate does not match the scenario");
  const int m = scenario.num_nodes();
  Scene scene;
  scene.scenario = scenario;
  scene.clean.assign(clean.begin(), clean.end());
  scene.observations.resize(m);
  scene.references.resize(m);
  scene.rirs.resize(m);
  scene.t60_estimates.resize(m);
  scene.early_boundaries.resize(m);
  const int early = static_cast<int>(std::lround(kEarlyWindowSec *
                                                 scenario.sample_rate));
  ParallelFor(
      0, m,
      [&](std::size_t i) {
        const NodeId id = static_cast<NodeId>(i);
        ImpulseResponse rir = ImageMethodRir(scenario, id);
        const int boundary =
            std::min(DirectPathDelay(scenario, id) + early, rir.length());
        auto [head, tail] = SplitEarlyLate(rir, boundary);
        scene.observations[i] =
            RenderObservation(clean, clean_sample_rate, rir);
        scene.references[i] = RenderObservation(clean, clean_sample_rate, head);
        scene.t60_estimates[i] = EstimateT60(rir);
        scene.early_boundaries[i] = boundary;
        scene.rirs[i] = std::move(rir);
      },
      threads);
  return scene;
}

Spectrogram PaddedStft(std::span<const double> signal, const WindowSpec &window,
                       double sample_rate) {
  const std::size_t pad = window.frame_len - window.hop;
  std::vector<double> padded(pad, 0.0);
  padded.insert(padded.end(), signal.begin(), signal.end());
  padded.resize(padded.size() + pad, 0.0);
  return Stft(padded, window, sample_rate);
}

std::vector<double> PaddedIstft(const Spectrogram &spec, std::size_t length) {
  std::vector<double> full = Istft(spec);
  const std::size_t pad = spec.window.frame_len - spec.window.hop;
  Require(full.size() >= pad + length, ErrorKind::kInvalidInput,
          "spectrogram too short for the requested length");
  return {full.begin() + pad, full.begin() + pad + length};
}

namespace {

std::vector<NodeId> SelectedNodes(const DereverbOptions &o, int m) {
  std::vector<NodeId> nodes = o.nodes;
  if (nodes.empty())
    for (NodeId i = 0; i < m; ++i) nodes.push_back(i);
  for (NodeId n : nodes)
    Require(n >= 0 && n < m, ErrorKind::kConfig,
            "selected node " + std::to_string(n) + " does not exist");
  return nodes;
}

// Per-iteration change of each independent run, NaN once a run has stopped.
ConvergenceTrace TraceFromRuns(const std::vector<NodeId> &nodes,
                               const std::vector<WpeResult> &runs) {
  ConvergenceTrace trace;
  trace.nodes = nodes;
  std::size_t longest = 0;
  for (const auto &r : runs) longest = std::max(longest, r.trace.size());
  for (std::size_t it = 0; it < longest; ++it) {
    std::vector<double> row(runs.size(), std::nan(""));
    for (std::size_t i = 0; i < runs.size(); ++i)
      if (it < runs[i].trace.size()) row[i] = runs[i].trace[it].relative_change;
    trace.Append(static_cast<int>(it) + 1, std::move(row));
  }
  return trace;
}

}  // namespace

DereverbOutput RunDereverb(const std::vector<std::vector<double>> &observations,
                           double sample_rate, const DereverbOptions &options) {
  Require(!observations.empty(), ErrorKind::kInvalidInput, "no observations");
  const int m = static_cast<int>(observations.size());
  const std::size_t len = observations.front().size();
  for (int i = 0; i < m; ++i)
    Require(observations[i].size() == len, ErrorKind::kInvalidInput,
            "observation of node " + std::to_string(i) +
                " differs in length from node 0");
  Require(options.collab_period >= 1, ErrorKind::kConfig,
          "collaboration period must be >= 1");
  const std::vector<NodeId> nodes = SelectedNodes(options, m);

  DereverbOutput out;
  out.mode = options.mode;
  out.lags.assign(m, 0);
  std::vector<std::vector<double>> aligned;
  if (options.synchronize && m > 1) {
    Require(options.sync_reference >= 0 && options.sync_reference < m,
            ErrorKind::kConfig, "sync reference node does not exist");
    const int max_lag =
        std::min<long>(options.max_lag, static_cast<long>(len) - 1);
    SyncResult sync = Synchronize(observations, options.sync_reference,
                                  max_lag);
    aligned = std::move(sync.aligned);
    out.lags = std::move(sync.lags);
  } else {
    aligned = observations;
  }

  const WindowSpec window = WindowSpec::ForSampleRate(sample_rate);
  std::vector<Spectrogram> specs(m);
  ParallelFor(
      0, m,
      [&](std::size_t i) {
        specs[i] = PaddedStft(aligned[i], window, sample_rate);
      },
      options.params.threads);
  out.frames = specs.front().frames();
  out.bins = specs.front().bins();

  WpeParams params = options.params;
  if (options.psd_floor_rel > 0.0)
    params.psd_floor = RelativePsdFloor(specs, options.psd_floor_rel);
  params.Validate();

  std::map<NodeId, Spectrogram> desired;
  switch (options.mode) {
    case Mode::kSingle: {
      std::vector<WpeResult> runs;
      for (NodeId n : nodes) {
        runs.push_back(RunWpe(std::span(&specs[n], 1), 0, params));
        desired[n] = runs.back().desired;
      }
      out.trace = TraceFromRuns(nodes, runs);
      out.converged = std::all_of(runs.begin(), runs.end(),
                                  [](const WpeResult &r) { return r.converged; });
      for (const auto &r : runs)
        out.rounds = std::max(out.rounds, static_cast<int>(r.trace.size()));
      break;
    }
    case Mode::kCentralized: {
      // Every other node ships its raw spectrogram to a fusion node once.
      // Each shipped scalar feeds L taps of the stacked predictor, which is
      // how the per-frame, per-bin count (M - 1) L arises.
      Network net(m, Mode::kCentralized);
      const NodeId fusion = nodes.front();
      for (NodeId j = 0; j < m; ++j) {
        if (j == fusion) continue;
        Message msg;
        msg.from = j;
        msg.to = fusion;
        msg.round = 1;
        msg.payload = std::make_shared<const CMatrix>(specs[j].data);
        msg.units_per_scalar = params.filter_order;
        net.Submit(std::move(msg));
      }
      net.DeliverRound(1);
      out.ledger = net.ledger();

      std::vector<WpeResult> runs;
      for (NodeId n : nodes) {
        runs.push_back(RunWpe(specs, n, params));
        desired[n] = runs.back().desired;
      }
      out.trace = TraceFromRuns(nodes, runs);
      out.converged = std::all_of(runs.begin(), runs.end(),
                                  [](const WpeResult &r) { return r.converged; });
      for (const auto &r : runs)
        out.rounds = std::max(out.rounds, static_cast<int>(r.trace.size()));
      break;
    }
    case Mode::kDistributed: {
      DistributedResult r =
          RunDistributedWpe(specs, params, options.collab_period);
      for (auto &node : r.nodes) {
        Spectrogram s = node.local_spec;
        s.data = std::move(node.desired);
        desired[node.node_id] = std::move(s);
      }
      out.trace = std::move(r.trace);
      out.ledger = std::move(r.ledger);
      out.rounds = r.rounds;
      out.converged = r.converged;
      break;
    }
  }

  for (auto &[n, spec] : desired) {
    std::vector<double> y = PaddedIstft(spec, len);
    out.estimates[n] = out.lags[n] == 0 ? std::move(y)
                                        : ShiftSignal(y, out.lags[n]);
  }
  return out;
}

std::vector<NodeScore> ScoreNodes(
    const Scene &scene, const std::map<NodeId, std::vector<double>> &estimates,
    const MetricConfig &cfg) {
  std::vector<NodeScore> scores;
  const double fs = scene.scenario.sample_rate;
  for (const auto &[n, est] : estimates) {
    Require(n >= 0 && n < static_cast<int>(scene.references.size()),
            ErrorKind::kInvalidInput,
            "no reference for node " + std::to_string(n));
    const auto &ref = scene.references[n];
    if (est.size() != ref.size())
      Fail(ErrorKind::kInvalidInput,
           "node " + std::to_string(n) + ": estimate has " +
               std::to_string(est.size()) + " samples, reference has " +
               std::to_string(ref.size()));
    NodeScore s;
    s.node = n;
    s.unprocessed = Evaluate(ref, scene.observations[n], fs, cfg);
    s.processed = Evaluate(ref, est, fs, cfg);
    scores.push_back(s);
  }
  return scores;
}

}  // namespace dwpe
