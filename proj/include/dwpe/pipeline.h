// dwpe/pipeline.h

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

#ifndef DWPE_PIPELINE_H_
#define DWPE_PIPELINE_H_

#include <map>
#include <vector>

#include "dwpe/danse.h"
#include "dwpe/metrics.h"
#include "dwpe/netsim.h"
#include "dwpe/room-sim.h"
#include "dwpe/stft.h"
#include "dwpe/wpe.h"

namespace dwpe {

// End-to-end orchestration shared by the CLI and the acceptance tests:
// scene rendering, time-domain dereverberation in each mode, and scoring.

struct Scene {
  RoomScenario scenario;
  std::vector<double> clean;
  std::vector<std::vector<double>> observations;  // per node, clean * rir
  /// Per node, clean convolved with the RIR up to the early/late boundary:
  /// the target a dereverberated output is scored against.
  std::vector<std::vector<double>> references;
  std::vector<ImpulseResponse> rirs;
  std::vector<double> t60_estimates;
  std::vector<int> early_boundaries;  // samples, per node
};

/// Early part of each RIR: direct path plus this many seconds.
inline constexpr double kEarlyWindowSec = 0.05;

/// The first `num_nodes` microphones of `scenario`; reporting nodes beyond
/// the prefix are dropped. Throws kConfig when num_nodes is out of range.
RoomScenario Subnetwork(const RoomScenario &scenario, int num_nodes);

/// Renders every node of `scenario`. Nodes are simulated concurrently.
Scene SimulateScene(const RoomScenario &scenario,
                    std::span<const double> clean, double clean_sample_rate,
                    unsigned threads = 0);

struct DereverbOptions {
  Mode mode = Mode::kDistributed;
  WpeParams params;
  int collab_period = 2;
  /// PSD floor relative to the mean observation power; replaces
  /// params.psd_floor when positive.
  double psd_floor_rel = 1e-8;
  /// Nodes to produce outputs for in single and centralized mode.
  /// Distributed mode always produces every node. Empty = all nodes.
  std::vector<NodeId> nodes;
  bool synchronize = true;
  NodeId sync_reference = 0;
  int max_lag = 2000;
};

struct DereverbOutput {
  Mode mode = Mode::kDistributed;
  std::map<NodeId, std::vector<double>> estimates;  // in each node's timebase
  ConvergenceTrace trace;
  TransmissionLedger ledger;
  std::vector<int> lags;  // GCC-PHAT lag of each node vs the sync reference
  int rounds = 0;
  bool converged = false;
  /// Frames and bins of the processed spectrograms.
  int frames = 0;
  int bins = 0;
};

/// synchronize -> STFT -> mode-specific WPE -> iSTFT -> undo the shift.
/// Every observation must have the same length and sample rate.
DereverbOutput RunDereverb(const std::vector<std::vector<double>> &observations,
                           double sample_rate, const DereverbOptions &options);

/// STFT of a signal with (frame_len - hop) zeros on both sides so every
/// sample receives full overlap-add coverage.
Spectrogram PaddedStft(std::span<const double> signal, const WindowSpec &window,
                       double sample_rate);
/// Inverse of PaddedStft, trimmed back to `length` samples.
std::vector<double> PaddedIstft(const Spectrogram &spec, std::size_t length);

struct NodeScore {
  NodeId node = 0;
  MetricReport unprocessed;
  MetricReport processed;
};

/// Scores each estimate and the matching raw observation against the
/// node's early reference. Throws kInvalidInput naming the node when the
/// lengths disagree.
std::vector<NodeScore> ScoreNodes(const Scene &scene,
                                  const std::map<NodeId, std::vector<double>> &
                                      estimates,
                                  const MetricConfig &cfg = {});

}  // namespace dwpe

#endif  // DWPE_PIPELINE_H_
