// dwpe/synth.cc

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

#include "dwpe/synth.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "dwpe/error.h"

namespace dwpe {

namespace {

// Uniform draws built directly on the engine output, so the sequence does
// not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  double Noise() { return 2.0 * Uniform() - 1.0; }

 private:
  std::mt19937_64 engine_;
};

// Two-pole resonator with unit gain near its centre frequency.
class Resonator {
 public:
  Resonator(double freq, double bandwidth, double fs) {
    const double r = std::exp(-std::numbers::pi * bandwidth / fs);
    a1_ = 2.0 * r * std::cos(2.0 * std::numbers::pi * freq / fs);
    a2_ = -r * r;
    gain_ = 1.0 - r;
  }
  double Step(double x) {
    const double y = gain_ * x + a1_ * y1_ + a2_ * y2_;
    y2_ = y1_;
    y1_ = y;
    return y;
  }

 private:
  double a1_ = 0, a2_ = 0, gain_ = 1, y1_ = 0, y2_ = 0;
};

struct Vowel {
  std::array<double, 3> formants;
};

constexpr std::array<Vowel, 5> kVowels = {{
    {{730, 1090, 2440}},
    {{270, 2290, 3010}},
    {{300, 870, 2240}},
    {{530, 1840, 2480}},
    {{570, 840, 2410}},
}};

}  // namespace

std::vector<double> SyntheticSpeech(double seconds, double sample_rate,
                                    std::uint64_t seed) {
  Require(seconds > 0 && sample_rate >= 8000, ErrorKind::kInvalidInput,
          "synthetic speech needs a positive duration and fs >= 8 kHz");
  const auto total = static_cast<std::size_t>(std::llround(seconds * sample_rate));
  std::vector<double> out(total, 0.0);
  Rng rng(seed);
  const double fs = sample_rate;

  std::size_t pos = static_cast<std::size_t>(rng.Uniform(0.05, 0.15) * fs);
  while (pos < total) {
    const auto len = static_cast<std::size_t>(rng.Uniform(0.12, 0.32) * fs);
    const Vowel &v =
        kVowels[static_cast<std::size_t>(rng.Uniform() * kVowels.size()) %
                kVowels.size()];
    const double level = rng.Uniform(0.4, 1.0);
    const bool fricative_onset = rng.Uniform() < 0.4;
    const auto fric_len =
        fricative_onset ? static_cast<std::size_t>(rng.Uniform(0.03, 0.08) * fs)
                        : 0;
    // Formants drift a little over the syllable.
    const double drift = rng.Uniform(0.9, 1.1);

    std::array<Resonator, 3> formants = {
        Resonator(v.formants[0], 90, fs), Resonator(v.formants[1], 120, fs),
        Resonator(v.formants[2] * drift, 170, fs)};
    Resonator hiss(std::min(0.4 * fs, 5000.0), 2500, fs);

    for (std::size_t i = 0; i < fric_len + len && pos + i < total; ++i) {
      double s = 0.0;
      if (i < fric_len) {
        const double env = std::sin(std::numbers::pi * i / fric_len);
        s = 0.3 * env * hiss.Step(rng.Noise());
      } else {
        // Noise excitation keeps the source unpredictable beyond a few
        // milliseconds, like the aperiodic parts of real speech.
        const double t = static_cast<double>(i - fric_len) / len;
        const double excitation = rng.Noise();
        double y = 0.0;
        for (std::size_t m = 0; m < formants.size(); ++m)
          y += formants[m].Step(excitation) / static_cast<double>(m + 1);
        const double env = std::pow(std::sin(std::numbers::pi * t), 0.6);
        s = level * env * y;
      }
      out[pos + i] += s;
    }
    pos += fric_len + len;
    // Short gaps inside a phrase, occasional longer pauses between phrases.
    pos += static_cast<std::size_t>(
        (rng.Uniform() < 0.2 ? rng.Uniform(0.25, 0.5) : rng.Uniform(0.03, 0.12)) *
        fs);
  }

  double peak = 0.0;
  for (double x : out) peak = std::max(peak, std::abs(x));
  if (peak > 0.0)
    for (double &x : out) x *= 0.5 / peak;
  return out;
}

}  // namespace dwpe
