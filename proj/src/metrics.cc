// dwpe/metrics.cc

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

#include "dwpe/metrics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "dwpe/error.h"
#include "dwpe/fft.h"

namespace dwpe {

namespace {

struct Framing {
  int len;
  int hop;
  int count;
};

Framing MakeFraming(std::size_t samples, double fs, const MetricConfig &cfg) {
  Framing f;
  f.len = static_cast<int>(std::lround(cfg.frame_sec * fs));
  f.hop = static_cast<int>(std::lround(cfg.hop_sec * fs));
  Require(f.len >= 2 && f.hop >= 1, ErrorKind::kConfig,
          "metric frame too short for the sample rate");
  f.count = samples < static_cast<std::size_t>(f.len)
                ? 0
                : static_cast<int>((samples - f.len) / f.hop + 1);
  return f;
}

void CheckPair(std::span<const double> ref, std::span<const double> est) {
  if (ref.size() != est.size())
    Fail(ErrorKind::kInvalidInput,
         "metric inputs differ in length: " + std::to_string(ref.size()) +
             " vs " + std::to_string(est.size()));
}

std::vector<double> Window(int len, bool hamming) {
  std::vector<double> w(len);
  for (int i = 0; i < len; ++i) {
    double c = std::cos(2.0 * std::numbers::pi * i / (len - 1));
    w[i] = hamming ? 0.54 - 0.46 * c : 0.5 - 0.5 * c;
  }
  return w;
}

// Indices of frames whose reference energy is within the threshold of the
// loudest frame.
std::vector<int> ActiveFrames(std::span<const double> ref, const Framing &f,
                              const MetricConfig &cfg) {
  std::vector<double> energy(f.count, 0.0);
  double peak = 0.0;
  for (int n = 0; n < f.count; ++n) {
    double e = 0.0;
    for (int i = 0; i < f.len; ++i) {
      double v = ref[static_cast<std::size_t>(n) * f.hop + i];
      e += v * v;
    }
    energy[n] = e;
    peak = std::max(peak, e);
  }
  if (!(peak > 0.0))
    Fail(ErrorKind::kUndefinedMetric, "reference signal is silent");
  const double thresh = peak * std::pow(10.0, cfg.active_threshold_db / 10.0);
  std::vector<int> active;
  for (int n = 0; n < f.count; ++n)
    if (energy[n] >= thresh && energy[n] > 0.0) active.push_back(n);
  return active;
}

// Triangular mel filters over the bins of an fft_size transform.
std::vector<std::vector<double>> MelFilters(int bands, int fft_size, double fs) {
  auto mel = [](double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); };
  auto hz = [](double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); };
  const int bins = fft_size / 2 + 1;
  const double top = mel(fs / 2.0);
  std::vector<double> edges(bands + 2);
  for (int b = 0; b < bands + 2; ++b) edges[b] = hz(top * b / (bands + 1));
  std::vector<std::vector<double>> filters(bands, std::vector<double>(bins));
  for (int b = 0; b < bands; ++b) {
    const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
    for (int k = 0; k < bins; ++k) {
      double f = k * fs / fft_size;
      double w = 0.0;
      if (f > lo && f <= mid) w = (f - lo) / (mid - lo);
      else if (f > mid && f < hi) w = (hi - f) / (hi - mid);
      filters[b][k] = w;
    }
  }
  return filters;
}

}  // namespace

std::vector<double> LpcCoefficients(std::span<const double> frame, int order) {
  std::vector<double> r(order + 1, 0.0);
  const int n = static_cast<int>(frame.size());
  for (int lag = 0; lag <= order; ++lag)
    for (int i = lag; i < n; ++i) r[lag] += frame[i] * frame[i - lag];
  std::vector<double> a(order, 0.0);
  if (!(r[0] > 0.0)) return a;
  // Slight white-noise correction keeps near-singular frames stable.
  r[0] *= 1.0 + 1e-9;
  double err = r[0];
  std::vector<double> prev(order, 0.0);
  for (int i = 1; i <= order; ++i) {
    double acc = r[i];
    for (int j = 1; j < i; ++j) acc += a[j - 1] * r[i - j];
    const double k = -acc / err;
    prev = a;
    a[i - 1] = k;
    for (int j = 1; j < i; ++j) a[j - 1] = prev[j - 1] + k * prev[i - j - 1];
    err *= 1.0 - k * k;
    if (!(err > 0.0)) break;
  }
  return a;
}

std::vector<double> LpcCepstrum(std::span<const double> lpc, int n) {
  const int p = static_cast<int>(lpc.size());
  std::vector<double> c(n + 1, 0.0);  // c[0] unused
  for (int m = 1; m <= n; ++m) {
    double acc = m <= p ? -lpc[m - 1] : 0.0;
    for (int k = std::max(1, m - p); k < m; ++k)
      acc -= static_cast<double>(k) / m * c[k] * lpc[m - k - 1];
    c[m] = acc;
  }
  return {c.begin() + 1, c.end()};
}

double CepstralDistance(std::span<const double> reference,
                        std::span<const double> estimate, double sample_rate,
                        const MetricConfig &cfg) {
  CheckPair(reference, estimate);
  const Framing f = MakeFraming(reference.size(), sample_rate, cfg);
  if (f.count == 0)
    Fail(ErrorKind::kUndefinedMetric, "signal shorter than one metric frame");
  const auto active = ActiveFrames(reference, f, cfg);
  const auto win = Window(f.len, /*hamming=*/true);
  const double scale = 10.0 / std::numbers::ln10 * std::sqrt(2.0);

  std::vector<double> xr(f.len), xe(f.len);
  double total = 0.0;
  for (int n : active) {
    const std::size_t start = static_cast<std::size_t>(n) * f.hop;
    for (int i = 0; i < f.len; ++i) {
      xr[i] = reference[start + i] * win[i];
      xe[i] = estimate[start + i] * win[i];
    }
    auto cr = LpcCepstrum(LpcCoefficients(xr, cfg.lpc_order), cfg.lpc_order);
    auto ce = LpcCepstrum(LpcCoefficients(xe, cfg.lpc_order), cfg.lpc_order);
    double ss = 0.0;
    for (int m = 0; m < cfg.lpc_order; ++m) ss += (cr[m] - ce[m]) * (cr[m] - ce[m]);
    total += std::clamp(scale * std::sqrt(ss), 0.0, cfg.cd_max);
  }
  return total / static_cast<double>(active.size());
}

double FwSegmentalSnr(std::span<const double> reference,
                      std::span<const double> estimate, double sample_rate,
                      const MetricConfig &cfg) {
  CheckPair(reference, estimate);
  const Framing f = MakeFraming(reference.size(), sample_rate, cfg);
  if (f.count == 0)
    Fail(ErrorKind::kUndefinedMetric, "signal shorter than one metric frame");
  const auto active = ActiveFrames(reference, f, cfg);
  const auto win = Window(f.len, /*hamming=*/false);
  const int fft_size = static_cast<int>(NextPow2(f.len));
  const auto filters = MelFilters(cfg.mel_bands, fft_size, sample_rate);

  RealFft fft(fft_size);
  std::vector<double> xr(f.len), xd(f.len);
  std::vector<Complex> sr(fft.bins()), sd(fft.bins());
  double total = 0.0;
  for (int n : active) {
    const std::size_t start = static_cast<std::size_t>(n) * f.hop;
    for (int i = 0; i < f.len; ++i) {
      xr[i] = reference[start + i] * win[i];
      xd[i] = (reference[start + i] - estimate[start + i]) * win[i];
    }
    fft.Forward(xr, sr);
    fft.Forward(xd, sd);
    double num = 0.0, den = 0.0;
    for (const auto &h : filters) {
      double pr = 0.0, pd = 0.0;
      for (std::size_t k = 0; k < h.size(); ++k) {
        if (h[k] == 0.0) continue;
        pr += h[k] * std::norm(sr[k]);
        pd += h[k] * std::norm(sd[k]);
      }
      double snr;
      if (pd == 0.0) snr = cfg.fsnr_max;
      else if (pr == 0.0) snr = cfg.fsnr_min;
      else snr = 10.0 * std::log10(pr / pd);
      snr = std::clamp(snr, cfg.fsnr_min, cfg.fsnr_max);
      const double w = std::pow(pr, cfg.band_weight_exponent / 2.0);
      num += w * snr;
      den += w;
    }
    total += den > 0.0 ? num / den : cfg.fsnr_min;
  }
  return total / static_cast<double>(active.size());
}

MetricReport Evaluate(std::span<const double> reference,
                      std::span<const double> estimate, double sample_rate,
                      const MetricConfig &cfg) {
  return {CepstralDistance(reference, estimate, sample_rate, cfg),
          FwSegmentalSnr(reference, estimate, sample_rate, cfg)};
}

double ConvergenceError(const CMatrix &cur, const CMatrix &prev) {
  if (cur.rows() != prev.rows() || cur.cols() != prev.cols())
    Fail(ErrorKind::kInvalidInput, "convergence error shape mismatch");
  const double den = prev.norm();
  if (!(den > 0.0))
    Fail(ErrorKind::kUndefinedMetric,
         "convergence error undefined for an all-zero previous estimate");
  return (cur - prev).norm() / den;
}

void ConvergenceTrace::Append(int round, std::vector<double> per_node) {
  Require(per_node.size() == nodes.size(), ErrorKind::kInvalidInput,
          "convergence row does not cover every node");
  rounds.push_back(round);
  errors.push_back(std::move(per_node));
}

std::vector<double> ConvergenceTrace::ForNode(std::size_t index) const {
  std::vector<double> out;
  out.reserve(errors.size());
  for (const auto &row : errors) out.push_back(row.at(index));
  return out;
}

void ConvergenceTrace::WriteCsv(std::ostream &os,
                                const std::string &prefix_header,
                                const std::string &prefix) const {
  os << prefix_header << "round,node,error\n";
  for (std::size_t r = 0; r < rounds.size(); ++r)
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!std::isnan(errors[r][i]))
        os << prefix << rounds[r] << ',' << nodes[i] << ',' << errors[r][i]
           << '\n';
}

}  // namespace dwpe
