// dwpe/stft.cc

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

#include "dwpe/stft.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dwpe/error.h"
#include "dwpe/fft.h"

namespace dwpe {

WindowSpec WindowSpec::ForSampleRate(double sample_rate) {
  WindowSpec w;
  w.frame_len = static_cast<int>(std::lround(0.032 * sample_rate));
  w.hop = w.frame_len / 4;
  return w;
}

std::vector<double> WindowSpec::AnalysisWindow() const {
  std::vector<double> w(frame_len);
  for (int n = 0; n < frame_len; ++n) {
    double hann =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / frame_len);
    w[n] = std::sqrt(hann);
  }
  return w;
}

std::vector<double> WindowSpec::SynthesisWindow() const {
  return AnalysisWindow();
}

double WindowSpec::OverlapAddGain() const {
  auto a = AnalysisWindow();
  auto s = SynthesisWindow();
  double sum = 0.0;
  for (int n = 0; n < frame_len; n += hop) sum += a[n] * s[n];
  return sum;
}

void WindowSpec::Validate() const {
  if (frame_len < 2 || frame_len % 2 != 0)
    Fail(ErrorKind::kInvalidInput,
         "frame_len must be even and >= 2, got " + std::to_string(frame_len));
  if (hop <= 0 || hop > frame_len)
    Fail(ErrorKind::kInvalidInput,
         "hop must satisfy 0 < hop <= frame_len, got " + std::to_string(hop));
  auto a = AnalysisWindow();
  auto s = SynthesisWindow();
  double lo = INFINITY, hi = 0.0;
  for (int offset = 0; offset < hop; ++offset) {
    double sum = 0.0;
    for (int n = offset; n < frame_len; n += hop) sum += a[n] * s[n];
    lo = std::min(lo, sum);
    hi = std::max(hi, sum);
  }
  if (!(hi > 0.0) || (hi - lo) > 1e-10 * hi)
    Fail(ErrorKind::kConfig, "window/hop pair (" + std::to_string(frame_len) +
                                 "/" + std::to_string(hop) +
                                 ") is not constant-overlap-add");
}

int FrameCount(std::size_t length, const WindowSpec &window) {
  if (length <= static_cast<std::size_t>(window.frame_len)) return 1;
  std::size_t rest = length - window.frame_len;
  return static_cast<int>(1 + (rest + window.hop - 1) / window.hop);
}

Spectrogram Stft(std::span<const double> signal, const WindowSpec &window,
                 double sample_rate) {
  window.Validate();
  if (signal.empty()) Fail(ErrorKind::kInvalidInput, "stft of empty signal");
  for (double v : signal)
    if (!std::isfinite(v))
      Fail(ErrorKind::kInvalidInput, "stft input contains non-finite samples");

  const int frames = FrameCount(signal.size(), window);
  const int bins = window.bins();
  const auto win = window.AnalysisWindow();

  Spectrogram out;
  out.sample_rate = sample_rate;
  out.window = window;
  out.data.resize(frames, bins);

  RealFft fft(window.frame_len);
  std::vector<double> buf(window.frame_len);
  std::vector<Complex> spec(bins);
  for (int n = 0; n < frames; ++n) {
    const std::size_t start = static_cast<std::size_t>(n) * window.hop;
    for (int i = 0; i < window.frame_len; ++i) {
      std::size_t t = start + i;
      buf[i] = t < signal.size() ? signal[t] * win[i] : 0.0;
    }
    fft.Forward(buf, spec);
    for (int k = 0; k < bins; ++k) out.data(n, k) = spec[k];
  }
  return out;
}

std::vector<double> Istft(const Spectrogram &spec) {
  const WindowSpec &window = spec.window;
  window.Validate();
  if (spec.bins() != window.bins())
    Fail(ErrorKind::kInvalidInput,
         "spectrogram has " + std::to_string(spec.bins()) +
             " bins but frame_len " + std::to_string(window.frame_len) +
             " implies " + std::to_string(window.bins()));
  if (spec.frames() < 1)
    Fail(ErrorKind::kInvalidInput, "istft of empty spectrogram");

  const int frames = spec.frames();
  const int bins = spec.bins();
  const auto win = window.SynthesisWindow();
  const double gain = window.OverlapAddGain();

  std::vector<double> out(
      static_cast<std::size_t>(frames - 1) * window.hop + window.frame_len,
      0.0);
  RealFft fft(window.frame_len);
  std::vector<Complex> buf(bins);
  std::vector<double> frame(window.frame_len);
  for (int n = 0; n < frames; ++n) {
    for (int k = 0; k < bins; ++k) buf[k] = spec.data(n, k);
    // The half-complex inverse ignores the imaginary parts of DC and
    // Nyquist, i.e. it enforces conjugate symmetry.
    fft.Inverse(buf, frame);
    const std::size_t start = static_cast<std::size_t>(n) * window.hop;
    for (int i = 0; i < window.frame_len; ++i)
      out[start + i] += frame[i] * win[i] / gain;
  }
  return out;
}

}  // namespace dwpe
