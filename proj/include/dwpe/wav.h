// dwpe/wav.h

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

#ifndef DWPE_WAV_H_
#define DWPE_WAV_H_

#include <span>
#include <string>
#include <vector>

namespace dwpe {

// Mono RIFF/WAVE input and output. Samples are held as doubles in [-1, 1].

enum class SampleFormat { kPcm16, kFloat32 };

struct WavData {
  std::vector<double> samples;
  double sample_rate = 16000.0;
  SampleFormat format = SampleFormat::kPcm16;
};

/// Accepts 16-bit PCM and 32-bit IEEE float, plain or extensible headers.
/// Multichannel files and other encodings raise kInvalidInput; unreadable or
/// truncated files raise kIo. Both messages name the path.
WavData ReadWav(const std::string &path);

/// PCM16 output saturates at full scale; float output is written verbatim.
void WriteWav(const std::string &path, std::span<const double> samples,
              double sample_rate, SampleFormat format = SampleFormat::kFloat32);

}  // namespace dwpe

#endif  // DWPE_WAV_H_
