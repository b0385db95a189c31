// dwpe/wpe.h

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

#ifndef DWPE_WPE_H_
#define DWPE_WPE_H_

#include <span>
#include <vector>

#include "dwpe/hermitian-solve.h"
#include "dwpe/stft.h"
#include "dwpe/types.h"

namespace dwpe {

/// Weighted prediction error dereverberation.
///
/// For every frequency bin the desired signal is modelled as the reference
/// channel minus a linear prediction from frames delayed by `tau` or more:
///
///   D(n) = S_ref(n) - w^H x(n),   x(n) = [S_m(n - tau - l)]_{m, l}
///
/// and w, sigma are found by alternating the weighted least-squares solve
///
///   (sum_n x x^H / sigma(n)) w = sum_n x conj(S_ref(n)) / sigma(n)
///
/// with the PSD update sigma(n) = max(|D(n)|^2, psd_floor).
///
/// Frame indices are 0-based throughout; frames before the start of the
/// signal read as zero.
struct WpeParams {
  int tau = 4;            // prediction delay, frames
  int filter_order = 26;  // taps per channel
  double psd_floor = 1e-10;
  int max_iters = 10;
  double convergence_tol = 1e-4;
  /// Ridge added to each normal-equation matrix is
  /// ridge_scale * trace(Z) / dim.
  double ridge_scale = 1e-8;
  /// Worker threads for per-bin solves; 0 = hardware concurrency.
  unsigned threads = 0;

  void Validate() const;
};

/// sigma(n, k), every entry >= the floor it was built with.
struct PsdEstimate {
  RMatrix sigma;  // frames x bins
};

struct NormalEquations {
  CMatrix z;  // Hermitian
  CVector q;
};

/// psd_floor = rel * mean(|S|^2) over the given channels.
double RelativePsdFloor(std::span<const Spectrogram> channels, double rel);

/// [S(n - tau), S(n - tau - 1), ..., S(n - tau - L + 1)] at bin k.
CVector BuildDelayedVector(const Spectrogram &spec, int n, int k,
                           const WpeParams &params);

/// All delayed vectors of bin k as rows: X(n, l) = S(n - tau - l, k).
CMatrix DelayedMatrix(const Spectrogram &spec, int k, const WpeParams &params);

/// Channel-major stack of DelayedMatrix over all channels: N x (M L).
CMatrix StackedMatrix(std::span<const Spectrogram> channels, int k,
                      const WpeParams &params);

/// ref - weights^H stacked.
Complex PredictDesired(Complex ref, const CVector &stacked,
                       const CVector &weights);

/// Vectorized PredictDesired over all frames of a bin: target - X conj(w).
CVector PredictBin(const CVector &target, const CMatrix &stacked,
                   const CVector &weights);

PsdEstimate UpdatePsd(const CMatrix &desired, double floor);

/// Z = sum_n x_n x_n^H / sigma_n and q = sum_n x_n conj(t_n) / sigma_n where
/// x_n is row n of `stacked` and t_n the prediction target. Throws
/// kInvalidInput for non-positive sigma and kNumerical for non-finite sums.
NormalEquations AccumulateNormalEquations(const CMatrix &stacked,
                                          const CVector &targets,
                                          const RVector &sigma);

/// One weighted least-squares step for a single bin; the kernel shared by
/// the centralized, single-channel and per-node distributed estimators.
CVector SolveBin(const CMatrix &stacked, const CVector &targets,
                 const RVector &sigma, double ridge_scale,
                 SolveInfo *info = nullptr);

/// ML cost sum_{n,k} |D|^2 / sigma + log(pi sigma).
double WpeCost(const CMatrix &desired, const RMatrix &sigma);

struct WpeIteration {
  int iteration = 0;
  double cost = 0.0;             // WpeCost(desired, sigma used for the solve)
  double relative_change = 0.0;  // of the desired signal vs previous iterate
  double mean_weight_norm = 0.0;
  double max_condition = 0.0;
};

struct WpeResult {
  Spectrogram desired;
  std::vector<CVector> weights;  // per bin, length M L
  std::vector<WpeIteration> trace;
  bool converged = false;
};

/// Centralized (M > 1) or single-channel (M == 1) WPE on the given channels,
/// predicting channel `ref_channel`. Weights start at zero, so the first PSD
/// estimate comes from the reference observation itself.
WpeResult RunWpe(std::span<const Spectrogram> observations, NodeId ref_channel,
                 const WpeParams &params);

}  // namespace dwpe

#endif  // DWPE_WPE_H_
