// dwpe/stft.h

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

#ifndef DWPE_STFT_H_
#define DWPE_STFT_H_

#include <span>
#include <vector>

#include "dwpe/types.h"

namespace dwpe {

enum class WindowKind {
  /// Root-Hann analysis and synthesis windows; their product is the periodic
  /// Hann window, which overlap-adds to a constant at hops of frame_len/2,
  /// frame_len/4, ...
  kHann,
};

struct WindowSpec {
  int frame_len = 512;
  int hop = 128;
  WindowKind kind = WindowKind::kHann;

  /// 32 ms frames with 75% overlap.
  static WindowSpec ForSampleRate(double sample_rate);

  int bins() const { return frame_len / 2 + 1; }

  /// Throws kInvalidInput on malformed sizes and kConfig when the window
  /// pair does not overlap-add to a constant at this hop.
  void Validate() const;

  std::vector<double> AnalysisWindow() const;
  std::vector<double> SynthesisWindow() const;

  /// Sum over frames of analysis*synthesis at any interior sample.
  double OverlapAddGain() const;
};

/// One-sided STFT of a single channel: rows are frames, columns are bins.
/// Column-major storage keeps each frequency bin contiguous, which is the
/// access pattern of all per-bin estimators.
struct Spectrogram {
  CMatrix data;  // frames x bins
  double sample_rate = 16000.0;
  WindowSpec window;

  int frames() const { return static_cast<int>(data.rows()); }
  int bins() const { return static_cast<int>(data.cols()); }
};

/// Number of frames Stft() produces for a signal of `length` samples.
int FrameCount(std::size_t length, const WindowSpec &window);

/// Frame n holds the windowed DFT of samples [n*hop, n*hop + frame_len); the
/// trailing partial frame is zero padded.
Spectrogram Stft(std::span<const double> signal, const WindowSpec &window,
                 double sample_rate);

/// Weighted overlap-add; output length is (N-1)*hop + frame_len. Samples
/// covered by fewer than frame_len/hop frames (the first and last
/// frame_len - hop) are not fully reconstructed.
std::vector<double> Istft(const Spectrogram &spec);

}  // namespace dwpe

#endif  // DWPE_STFT_H_
