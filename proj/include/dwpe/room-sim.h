// dwpe/room-sim.h

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

#ifndef DWPE_ROOM_SIM_H_
#define DWPE_ROOM_SIM_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dwpe/types.h"

namespace dwpe {

using Point3 = std::array<double, 3>;

inline constexpr double kSpeedOfSound = 343.0;  // m/s
/// Cutoff of the DC-removal high-pass applied to every synthesized RIR.
inline constexpr double kRirHighPassHz = 100.0;

/// Shoebox room with one source and one omnidirectional microphone per node.
struct RoomScenario {
  std::string name = "scenario";
  Point3 room_dims{};  // meters
  Point3 source_pos{};
  std::vector<Point3> mic_positions;
  double t60_target = 0.5;  // seconds
  double sample_rate = 16000.0;
  int rir_length = 0;  // samples
  /// Overrides the Sabine mapping with a uniform wall absorption coefficient
  /// in [0, 1]. 1.0 gives the anechoic response.
  std::optional<double> absorption;
  /// Nodes whose metrics are reported, labelled A, B, C, ... in reports.
  std::vector<NodeId> report_nodes;

  int num_nodes() const { return static_cast<int>(mic_positions.size()); }

  /// Throws kInvalidInput for geometry violations and kConfig for
  /// unreachable reverberation targets.
  void Validate() const;
};

struct ImpulseResponse {
  std::vector<double> taps;
  double sample_rate = 16000.0;
  /// Index of taps[0] in the full response; non-zero for the late part
  /// returned by SplitEarlyLate.
  int start = 0;

  int length() const { return static_cast<int>(taps.size()); }
};

/// Uniform absorption coefficient from Sabine's formula
/// T60 = 24 ln(10) V / (c S alpha). Throws kConfig when alpha > 1.
double SabineAbsorption(const Point3 &room_dims, double t60);

/// Allen-Berkley image-method RIR from the source to microphone `mic`.
/// Image delays are rounded to the nearest sample; each image contributes
/// beta^order / (4 pi r) with beta = sqrt(1 - alpha). The summed response is
/// high-passed at kRirHighPassHz as in the original method.
ImpulseResponse ImageMethodRir(const RoomScenario &scenario, NodeId mic);

/// Direct-path delay in samples (rounded) from source to `mic`.
int DirectPathDelay(const RoomScenario &scenario, NodeId mic);

/// Full linear convolution of `clean` with the RIR (honouring rir.start),
/// truncated to clean.size() samples.
std::vector<double> RenderObservation(std::span<const double> clean,
                                      double clean_sample_rate,
                                      const ImpulseResponse &rir);

/// early = taps [0, boundary), late = taps [boundary, L_r) with
/// late.start == boundary.
std::pair<ImpulseResponse, ImpulseResponse> SplitEarlyLate(
    const ImpulseResponse &rir, int boundary);

/// T60 from the Schroeder energy decay curve, extrapolated from a linear
/// fit over [-5, -25] dB.
double EstimateT60(const ImpulseResponse &rir);

/// The shipped 12-node simulated room: four linear three-microphone arrays
/// spread around one talker, T60 about 0.83 s.
/// Node order puts the reporting nodes A, B in the first six and C in the
/// first nine, so prefixes of size 6 and 9 mirror the sub-network rows.
RoomScenario DefaultScenario();

}  // namespace dwpe

#endif  // DWPE_ROOM_SIM_H_
