// dwpe/metrics.h

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

#ifndef DWPE_METRICS_H_
#define DWPE_METRICS_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dwpe/types.h"

namespace dwpe {

/// Framing and clamps shared by the quality measures. Defaults follow the
/// REVERB challenge evaluation conventions.
struct MetricConfig {
  double frame_sec = 0.025;
  double hop_sec = 0.010;
  int lpc_order = 12;
  /// Frames whose reference energy is this far below the loudest frame are
  /// excluded from the averages.
  double active_threshold_db = -40.0;
  double cd_max = 10.0;
  double fsnr_min = -10.0;
  double fsnr_max = 35.0;
  int mel_bands = 25;
  /// Band weight is (band magnitude)^gamma.
  double band_weight_exponent = 0.2;
};

struct MetricReport {
  double cd = 0.0;    // dB, lower is better
  double fsnr = 0.0;  // dB, higher is better
};

/// Autocorrelation LPC by Levinson-Durbin. Returns a_1..a_p of
/// A(z) = 1 + sum a_k z^-k; all zeros for a silent frame.
std::vector<double> LpcCoefficients(std::span<const double> frame, int order);

/// Cepstrum c_1..c_n of the all-pole model 1 / A(z).
std::vector<double> LpcCepstrum(std::span<const double> lpc, int n);

/// Mean over active frames of (10 / ln 10) sqrt(2 sum_{m=1..p} (c_m - c'_m)^2)
/// with LPC cepstra of order p, each frame clamped to [0, cd_max]. The gain
/// term c_0 is excluded, so the measure is invariant to scaling.
double CepstralDistance(std::span<const double> reference,
                        std::span<const double> estimate, double sample_rate,
                        const MetricConfig &cfg = {});

/// Frequency-weighted segmental SNR. Per frame and mel band,
/// SNR_b = 10 log10(P_b(ref) / P_b(ref - est)) on power spectra clamped to
/// [fsnr_min, fsnr_max]; bands are averaged with weights
/// P_b(ref)^(gamma / 2) and frames are averaged over the active set.
double FwSegmentalSnr(std::span<const double> reference,
                      std::span<const double> estimate, double sample_rate,
                      const MetricConfig &cfg = {});

MetricReport Evaluate(std::span<const double> reference,
                      std::span<const double> estimate, double sample_rate,
                      const MetricConfig &cfg = {});

/// ||cur - prev||_F / ||prev||_F. Throws kUndefinedMetric for prev == 0.
double ConvergenceError(const CMatrix &cur, const CMatrix &prev);

/// Per-round, per-node relative change of the desired-signal estimate.
struct ConvergenceTrace {
  std::vector<NodeId> nodes;
  std::vector<int> rounds;
  std::vector<std::vector<double>> errors;  // [round][node]

  void Append(int round, std::vector<double> per_node);
  /// The column for one node (by position in `nodes`).
  std::vector<double> ForNode(std::size_t index) const;
  /// Rows: round,node,error. NaN entries (a node that had already stopped)
  /// are skipped. Prefixed columns let callers add provenance.
  void WriteCsv(std::ostream &os, const std::string &prefix_header = "",
                const std::string &prefix = "") const;
};

}  // namespace dwpe

#endif  // DWPE_METRICS_H_
