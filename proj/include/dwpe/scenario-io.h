// dwpe/scenario-io.h

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

#ifndef DWPE_SCENARIO_IO_H_
#define DWPE_SCENARIO_IO_H_

#include <string>

#include "dwpe/room-sim.h"

namespace dwpe {

// JSON scenario files.
//
//   {
//     "name": "sim12",
//     "room_dims": [6.0, 5.5, 3.0],
//     "source_pos": [3.0, 2.5, 1.5],
//     "mic_positions": [[1.2, 1.3, 1.2], ...],
//     "t60_target": 0.83,
//     "sample_rate": 16000,
//     "rir_length": 13280,
//     "absorption": 0.3,        (optional)
//     "report_nodes": [0, 3, 6]
//   }
//
// Unknown keys and missing required keys are kConfig errors. The parsed
// scenario is validated before it is returned.

RoomScenario ParseScenarioJson(const std::string &text);
RoomScenario LoadScenario(const std::string &path);

std::string ScenarioToJson(const RoomScenario &scenario);
void SaveScenario(const std::string &path, const RoomScenario &scenario);

}  // namespace dwpe

#endif  // DWPE_SCENARIO_IO_H_
