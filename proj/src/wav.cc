// dwpe/wav.cc

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

#include "dwpe/wav.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "dwpe/error.h"

namespace dwpe {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t Le32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) |
         static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 |
         static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint16_t Le16(const unsigned char *p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

void Put32(std::string &out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

void Put16(std::string &out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

}  // namespace

WavData ReadWav(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  auto bad = [&](const std::string &why) -> void {
    Fail(ErrorKind::kIo, "'" + path + "': " + why);
  };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    bad("not a RIFF/WAVE file");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char *data = nullptr;
  std::size_t data_len = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char *chunk = bytes.data() + pos;
    const std::size_t len = Le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (len < 16 || body + len > bytes.size()) bad("truncated fmt chunk");
      format = Le16(chunk + 8);
      channels = Le16(chunk + 10);
      rate = Le32(chunk + 12);
      bits = Le16(chunk + 22);
      if (format == kFormatExtensible) {
        if (len < 40) bad("truncated extensible fmt chunk");
        format = Le16(chunk + 32);
      }
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_len = std::min(len, bytes.size() - body);
      if (data_len < len) bad("truncated data chunk");
    }
    pos = body + len + (len & 1);
  }
  if (channels == 0) bad("missing fmt chunk");
  if (!data) bad("missing data chunk");
  if (channels != 1)
    Fail(ErrorKind::kInvalidInput, "'" + path + "': expected mono, got " +
                                       std::to_string(channels) + " channels");

  WavData out;
  out.sample_rate = rate;
  if (format == kFormatPcm && bits == 16) {
    out.format = SampleFormat::kPcm16;
    out.samples.resize(data_len / 2);
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      auto v = static_cast<std::int16_t>(Le16(data + 2 * i));
      out.samples[i] = v / 32768.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    out.format = SampleFormat::kFloat32;
    out.samples.resize(data_len / 4);
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      std::uint32_t u = Le32(data + 4 * i);
      float f;
      std::memcpy(&f, &u, sizeof f);
      out.samples[i] = f;
    }
  } else {
    Fail(ErrorKind::kInvalidInput,
         "'" + path + "': unsupported encoding (format " +
             std::to_string(format) + ", " + std::to_string(bits) + " bits)");
  }
  return out;
}

void WriteWav(const std::string &path, std::span<const double> samples,
              double sample_rate, SampleFormat format) {
  Require(sample_rate > 0 && std::floor(sample_rate) == sample_rate,
          ErrorKind::kInvalidInput, "sample rate must be a positive integer");
  const bool pcm = format == SampleFormat::kPcm16;
  const std::uint16_t bytes_per = pcm ? 2 : 4;
  const auto data_len = static_cast<std::uint32_t>(samples.size() * bytes_per);
  const auto rate = static_cast<std::uint32_t>(sample_rate);

  std::string out;
  out.reserve(44 + data_len);
  out += "RIFF";
  Put32(out, 36 + data_len);
  out += "WAVEfmt ";
  Put32(out, 16);
  Put16(out, pcm ? kFormatPcm : kFormatFloat);
  Put16(out, 1);
  Put32(out, rate);
  Put32(out, rate * bytes_per);
  Put16(out, bytes_per);
  Put16(out, bytes_per * 8);
  out += "data";
  Put32(out, data_len);
  for (double x : samples) {
    if (pcm) {
      double s = std::clamp(std::round(x * 32768.0), -32768.0, 32767.0);
      Put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(s)));
    } else {
      float f = static_cast<float>(x);
      std::uint32_t u;
      std::memcpy(&u, &f, sizeof u);
      Put32(out, u);
    }
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) Fail(ErrorKind::kIo, "cannot write '" + path + "'");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) Fail(ErrorKind::kIo, "write failed for '" + path + "'");
}

}  // namespace dwpe
