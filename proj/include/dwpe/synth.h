// dwpe/synth.h

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

#ifndef DWPE_SYNTH_H_
#define DWPE_SYNTH_H_

#include <cstdint>
#include <vector>

namespace dwpe {

/// Speech-like test signal: formant-filtered noise and fricative bursts under
/// syllable-rate energy envelopes, separated by pauses. Fully determined by
/// (seconds, sample_rate, seed). Peak amplitude is 0.5.
std::vector<double> SyntheticSpeech(double seconds, double sample_rate,
                                    std::uint64_t seed);

}  // namespace dwpe

#endif  // DWPE_SYNTH_H_
