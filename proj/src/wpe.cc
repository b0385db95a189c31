// dwpe/wpe.cc

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

#include "dwpe/wpe.h"

#include <cmath>
#include <numbers>
#include <string>

#include "dwpe/error.h"
#include "dwpe/metrics.h"

namespace dwpe {

void WpeParams::Validate() const {
  Require(tau >= 1, ErrorKind::kConfig, "tau must be >= 1");
  Require(filter_order >= 1, ErrorKind::kConfig, "filter order must be >= 1");
  Require(psd_floor > 0.0, ErrorKind::kConfig, "psd floor must be > 0");
  Require(max_iters >= 1, ErrorKind::kConfig, "max_iters must be >= 1");
  Require(convergence_tol >= 0.0, ErrorKind::kConfig,
          "convergence tolerance must be >= 0");
  Require(ridge_scale >= 0.0, ErrorKind::kConfig, "ridge scale must be >= 0");
}

double RelativePsdFloor(std::span<const Spectrogram> channels, double rel) {
  double power = 0.0;
  double count = 0.0;
  for (const auto &c : channels) {
    power += c.data.squaredNorm();
    count += static_cast<double>(c.data.size());
  }
  double mean = count > 0 ? power / count : 0.0;
  // An all-zero input still needs a strictly positive floor.
  return mean > 0.0 ? rel * mean : rel;
}

CVector BuildDelayedVector(const Spectrogram &spec, int n, int k,
                           const WpeParams &params) {
  Require(n >= 0 && n < spec.frames(), ErrorKind::kInvalidInput,
          "frame index " + std::to_string(n) + " out of range");
  Require(k >= 0 && k < spec.bins(), ErrorKind::kInvalidInput,
          "bin index " + std::to_string(k) + " out of range");
  CVector v(params.filter_order);
  for (int l = 0; l < params.filter_order; ++l) {
    int src = n - params.tau - l;
    v(l) = src >= 0 ? spec.data(src, k) : Complex(0.0, 0.0);
  }
  return v;
}

CMatrix DelayedMatrix(const Spectrogram &spec, int k, const WpeParams &params) {
  const int frames = spec.frames();
  CMatrix x = CMatrix::Zero(frames, params.filter_order);
  for (int l = 0; l < params.filter_order; ++l) {
    const int shift = params.tau + l;
    if (shift >= frames) break;
    x.col(l).tail(frames - shift) = spec.data.col(k).head(frames - shift);
  }
  return x;
}

CMatrix StackedMatrix(std::span<const Spectrogram> channels, int k,
                      const WpeParams &params) {
  const int frames = channels.front().frames();
  const int l = params.filter_order;
  CMatrix x(frames, static_cast<Eigen::Index>(channels.size()) * l);
  for (std::size_t m = 0; m < channels.size(); ++m)
    x.middleCols(static_cast<Eigen::Index>(m) * l, l) =
        DelayedMatrix(channels[m], k, params);
  return x;
}

Complex PredictDesired(Complex ref, const CVector &stacked,
                       const CVector &weights) {
  if (stacked.size() != weights.size())
    Fail(ErrorKind::kInvalidInput,
         "prediction length mismatch: " + std::to_string(stacked.size()) +
             " observations vs " + std::to_string(weights.size()) + " weights");
  return ref - weights.dot(stacked);  // Eigen's dot conjugates the left side
}

CVector PredictBin(const CVector &target, const CMatrix &stacked,
                   const CVector &weights) {
  if (stacked.cols() != weights.size() || stacked.rows() != target.size())
    Fail(ErrorKind::kInvalidInput, "prediction dimension mismatch");
  return target - stacked * weights.conjugate();
}

PsdEstimate UpdatePsd(const CMatrix &desired, double floor) {
  Require(floor > 0.0, ErrorKind::kInvalidInput, "psd floor must be > 0");
  PsdEstimate psd;
  psd.sigma = desired.cwiseAbs2().cwiseMax(floor);
  return psd;
}

NormalEquations AccumulateNormalEquations(const CMatrix &stacked,
                                          const CVector &targets,
                                          const RVector &sigma) {
  const Eigen::Index frames = stacked.rows();
  if (targets.size() != frames || sigma.size() != frames)
    Fail(ErrorKind::kInvalidInput, "normal equation dimension mismatch");
  if (frames > 0 && !(sigma.minCoeff() > 0.0))
    Fail(ErrorKind::kInvalidInput, "psd entries must be strictly positive");

  // u_n = x_n / sigma_n and v_n = conj(t_n) / sigma_n, then
  // Z = sum u_n x_n^H and q = sum x_n v_n.
  CMatrix weighted = stacked.array().colwise() / sigma.array().cast<Complex>();
  CVector scaled_targets =
      targets.conjugate().array() / sigma.array().cast<Complex>();
  NormalEquations ne;
  ne.z.noalias() = weighted.transpose() * stacked.conjugate();
  ne.q.noalias() = stacked.transpose() * scaled_targets;
  if (!ne.z.allFinite() || !ne.q.allFinite())
    Fail(ErrorKind::kNumerical, "non-finite normal equations");
  return ne;
}

CVector SolveBin(const CMatrix &stacked, const CVector &targets,
                 const RVector &sigma, double ridge_scale, SolveInfo *info) {
  NormalEquations ne = AccumulateNormalEquations(stacked, targets, sigma);
  return SolveWeights(ne.z, ne.q, DefaultRidge(ne.z, ridge_scale), info);
}

double WpeCost(const CMatrix &desired, const RMatrix &sigma) {
  const double log_pi = std::log(std::numbers::pi);
  return (desired.cwiseAbs2().array() / sigma.array()).sum() +
         (sigma.array().log() + log_pi).sum();
}

namespace {

double RelativeChange(const CMatrix &cur, const CMatrix &prev) {
  if (prev.squaredNorm() == 0.0) return cur.squaredNorm() == 0.0 ? 0.0 : 1.0;
  return ConvergenceError(cur, prev);
}

}  // namespace

WpeResult RunWpe(std::span<const Spectrogram> observations, NodeId ref_channel,
                 const WpeParams &params) {
  params.Validate();
  Require(!observations.empty(), ErrorKind::kInvalidInput,
          "no observation channels");
  const int channels = static_cast<int>(observations.size());
  Require(ref_channel >= 0 && ref_channel < channels, ErrorKind::kInvalidInput,
          "reference channel " + std::to_string(ref_channel) +
              " out of range");
  const int frames = observations.front().frames();
  const int bins = observations.front().bins();
  for (const auto &o : observations)
    Require(o.frames() == frames && o.bins() == bins, ErrorKind::kInvalidInput,
            "observation spectrograms differ in shape");

  const Spectrogram &ref = observations[ref_channel];
  WpeResult result;
  result.desired = ref;
  result.weights.assign(bins, CVector::Zero(channels * params.filter_order));

  std::vector<SolveInfo> infos(bins);
  for (int it = 1; it <= params.max_iters; ++it) {
    const PsdEstimate psd = UpdatePsd(result.desired.data, params.psd_floor);
    CMatrix next(frames, bins);
    ParallelFor(
        0, bins,
        [&](std::size_t kk) {
          const int k = static_cast<int>(kk);
          try {
            CMatrix x = StackedMatrix(observations, k, params);
            CVector target = ref.data.col(k);
            result.weights[k] = SolveBin(x, target, psd.sigma.col(k),
                                         params.ridge_scale, &infos[k]);
            next.col(k) = PredictBin(target, x, result.weights[k]);
          } catch (const Error &e) {
            throw Error(e.kind(), std::string(e.what()) + " [bin " +
                                      std::to_string(k) + ", iteration " +
                                      std::to_string(it) + "]");
          }
        },
        params.threads);

    WpeIteration rec;
    rec.iteration = it;
    rec.cost = WpeCost(next, psd.sigma);
    rec.relative_change = RelativeChange(next, result.desired.data);
    double norm_sum = 0.0;
    for (int k = 0; k < bins; ++k) {
      norm_sum += result.weights[k].norm();
      rec.max_condition = std::max(rec.max_condition,
                                   infos[k].condition_estimate);
    }
    rec.mean_weight_norm = norm_sum / bins;
    result.desired.data = std::move(next);
    result.trace.push_back(rec);
    if (rec.relative_change < params.convergence_tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace dwpe
