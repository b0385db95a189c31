// dwpe/scenario-io.cc

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

#include "dwpe/scenario-io.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "dwpe/error.h"

namespace dwpe {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "name",       "room_dims",   "source_pos",  "mic_positions", "t60_target",
    "sample_rate", "rir_length", "absorption", "report_nodes"};

Point3 ToPoint(const json &j, const std::string &what) {
  if (!j.is_array() || j.size() != 3)
    Fail(ErrorKind::kConfig, what + " must be an array of three numbers");
  Point3 p;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number())
      Fail(ErrorKind::kConfig, what + " must be an array of three numbers");
    p[i] = j[i].get<double>();
  }
  return p;
}

const json &Need(const json &j, const char *key) {
  auto it = j.find(key);
  if (it == j.end())
    Fail(ErrorKind::kConfig, std::string("scenario is missing '") + key + "'");
  return *it;
}

}  // namespace

RoomScenario ParseScenarioJson(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    Fail(ErrorKind::kConfig, std::string("malformed scenario: ") + e.what());
  }
  if (!j.is_object())
    Fail(ErrorKind::kConfig, "scenario must be a JSON object");
  for (const auto &[key, value] : j.items())
    if (!kKnownKeys.count(key))
      Fail(ErrorKind::kConfig, "unknown scenario key '" + key + "'");

  RoomScenario s;
  try {
    if (j.contains("name")) s.name = j["name"].get<std::string>();
    s.room_dims = ToPoint(Need(j, "room_dims"), "room_dims");
    s.source_pos = ToPoint(Need(j, "source_pos"), "source_pos");
    const json &mics = Need(j, "mic_positions");
    if (!mics.is_array())
      Fail(ErrorKind::kConfig, "mic_positions must be an array");
    for (std::size_t i = 0; i < mics.size(); ++i)
      s.mic_positions.push_back(
          ToPoint(mics[i], "mic_positions[" + std::to_string(i) + "]"));
    s.t60_target = Need(j, "t60_target").get<double>();
    if (j.contains("sample_rate")) s.sample_rate = j["sample_rate"].get<double>();
    s.rir_length = Need(j, "rir_length").get<int>();
    if (j.contains("absorption") && !j["absorption"].is_null())
      s.absorption = j["absorption"].get<double>();
    if (j.contains("report_nodes"))
      s.report_nodes = j["report_nodes"].get<std::vector<NodeId>>();
  } catch (const json::exception &e) {
    Fail(ErrorKind::kConfig, std::string("bad scenario value: ") + e.what());
  }
  try {
    s.Validate();
  } catch (const Error &e) {
    Fail(ErrorKind::kConfig, std::string("invalid scenario: ") + e.what());
  }
  return s;
}

RoomScenario LoadScenario(const std::string &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open scenario '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return ParseScenarioJson(ss.str());
  } catch (const Error &e) {
    throw Error(e.kind(), std::string(e.what()) + " [" + path + "]");
  }
}

std::string ScenarioToJson(const RoomScenario &s) {
  json j;
  j["name"] = s.name;
  j["room_dims"] = s.room_dims;
  j["source_pos"] = s.source_pos;
  j["mic_positions"] = s.mic_positions;
  j["t60_target"] = s.t60_target;
  j["sample_rate"] = s.sample_rate;
  j["rir_length"] = s.rir_length;
  if (s.absorption) j["absorption"] = *s.absorption;
  j["report_nodes"] = s.report_nodes;
  return j.dump(2) + "\n";
}

void SaveScenario(const std::string &path, const RoomScenario &scenario) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIo, "cannot write scenario '" + path + "'");
  out << ScenarioToJson(scenario);
  if (!out) Fail(ErrorKind::kIo, "write failed for '" + path + "'");
}

}  // namespace dwpe
