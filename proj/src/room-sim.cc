// dwpe/room-sim.cc

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

#include "dwpe/room-sim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dwpe/error.h"
#include "dwpe/fft.h"

namespace dwpe {

namespace {

bool StrictlyInside(const Point3 &p, const Point3 &dims) {
  for (int a = 0; a < 3; ++a)
    if (!(p[a] > 0.0 && p[a] < dims[a])) return false;
  return true;
}

double Distance(const Point3 &a, const Point3 &b) {
  double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::string Fmt(const Point3 &p) {
  return "(" + std::to_string(p[0]) + ", " + std::to_string(p[1]) + ", " +
         std::to_string(p[2]) + ")";
}

// One image coordinate along an axis: offset from the microphone and the
// number of wall reflections it took to get there.
struct AxisImage {
  double delta;
  int order;
};

std::vector<AxisImage> AxisImages(double src, double mic, double len,
                                  double max_dist) {
  const int n_max = static_cast<int>(std::ceil(max_dist / (2.0 * len))) + 1;
  std::vector<AxisImage> out;
  for (int n = -n_max; n <= n_max; ++n) {
    for (int u = 0; u <= 1; ++u) {
      double pos = (1 - 2 * u) * src + 2.0 * n * len;
      double delta = pos - mic;
      if (std::fabs(delta) > max_dist) continue;
      out.push_back({delta, std::abs(n - u) + std::abs(n)});
    }
  }
  return out;
}

// The Allen-Berkley DC-removal filter. With real reflection coefficients
// every image adds a positive tap, so dense late taps pile up into a
// low-frequency hump that would otherwise dominate the decay.
void HighPass(std::vector<double> &taps, double fs) {
  const double w = 2.0 * std::numbers::pi * kRirHighPassHz / fs;
  const double r1 = std::exp(-w);
  const double b1 = 2.0 * r1 * std::cos(w);
  const double b2 = -r1 * r1;
  const double a1 = -(1.0 + r1);
  double y0 = 0.0, y1 = 0.0, y2 = 0.0;
  for (double &x : taps) {
    y2 = y1;
    y1 = y0;
    y0 = b1 * y1 + b2 * y2 + x;
    x = y0 + a1 * y1 + r1 * y2;
  }
}

}  // namespace

void RoomScenario::Validate() const {
  for (int a = 0; a < 3; ++a)
    Require(room_dims[a] > 0.0, ErrorKind::kInvalidInput,
            "room dimensions must be positive");
  Require(!mic_positions.empty(), ErrorKind::kInvalidInput,
          "scenario needs at least one microphone");
  Require(StrictlyInside(source_pos, room_dims), ErrorKind::kInvalidInput,
          "source " + Fmt(source_pos) + " is not strictly inside the room");
  for (std::size_t i = 0; i < mic_positions.size(); ++i)
    Require(StrictlyInside(mic_positions[i], room_dims),
            ErrorKind::kInvalidInput,
            "microphone " + std::to_string(i) + " " + Fmt(mic_positions[i]) +
                " is not strictly inside the room");
  Require(sample_rate > 0.0, ErrorKind::kInvalidInput,
          "sample_rate must be positive");
  Require(t60_target > 0.0, ErrorKind::kInvalidInput,
          "t60 must be positive");
  Require(rir_length >= sample_rate * t60_target / 2.0,
          ErrorKind::kInvalidInput,
          "rir_length " + std::to_string(rir_length) +
              " is shorter than half the T60 in samples");
  if (absorption) {
    Require(*absorption >= 0.0 && *absorption <= 1.0, ErrorKind::kConfig,
            "absorption must lie in [0, 1]");
  } else {
    SabineAbsorption(room_dims, t60_target);
  }
  for (NodeId n : report_nodes)
    Require(n >= 0 && n < num_nodes(), ErrorKind::kInvalidInput,
            "report node " + std::to_string(n) + " out of range");
}

double SabineAbsorption(const Point3 &d, double t60) {
  const double volume = d[0] * d[1] * d[2];
  const double surface = 2.0 * (d[0] * d[1] + d[0] * d[2] + d[1] * d[2]);
  const double alpha =
      24.0 * std::numbers::ln10 * volume / (kSpeedOfSound * surface * t60);
  if (alpha > 1.0)
    Fail(ErrorKind::kConfig,
         "T60 of " + std::to_string(t60) +
             " s is unreachable for this room (Sabine absorption " +
             std::to_string(alpha) + " > 1)");
  return alpha;
}

int DirectPathDelay(const RoomScenario &s, NodeId mic) {
  Require(mic >= 0 && mic < s.num_nodes(), ErrorKind::kInvalidInput,
          "mic index " + std::to_string(mic) + " out of range");
  return static_cast<int>(std::lround(
      Distance(s.source_pos, s.mic_positions[mic]) / kSpeedOfSound *
      s.sample_rate));
}

ImpulseResponse ImageMethodRir(const RoomScenario &s, NodeId mic) {
  s.Validate();
  Require(mic >= 0 && mic < s.num_nodes(), ErrorKind::kInvalidInput,
          "mic index " + std::to_string(mic) + " out of range");
  const double alpha =
      s.absorption ? *s.absorption : SabineAbsorption(s.room_dims, s.t60_target);
  const double beta = std::sqrt(1.0 - alpha);

  ImpulseResponse rir;
  rir.sample_rate = s.sample_rate;
  rir.taps.assign(s.rir_length, 0.0);

  const Point3 &m = s.mic_positions[mic];
  const double max_dist = (s.rir_length + 0.5) * kSpeedOfSound / s.sample_rate;
  auto xs = AxisImages(s.source_pos[0], m[0], s.room_dims[0], max_dist);
  auto ys = AxisImages(s.source_pos[1], m[1], s.room_dims[1], max_dist);
  auto zs = AxisImages(s.source_pos[2], m[2], s.room_dims[2], max_dist);

  // beta^order for every order that can occur.
  int max_order = 0;
  for (const auto *axis : {&xs, &ys, &zs}) {
    int o = 0;
    for (const auto &img : *axis) o = std::max(o, img.order);
    max_order += o;
  }
  std::vector<double> gain(max_order + 1);
  for (int o = 0; o <= max_order; ++o) gain[o] = std::pow(beta, o);

  const double max_dist2 = max_dist * max_dist;
  const double samples_per_meter = s.sample_rate / kSpeedOfSound;
  for (const auto &x : xs) {
    const double x2 = x.delta * x.delta;
    for (const auto &y : ys) {
      const double xy2 = x2 + y.delta * y.delta;
      if (xy2 > max_dist2) continue;
      for (const auto &z : zs) {
        const double r2 = xy2 + z.delta * z.delta;
        if (r2 > max_dist2) continue;
        const double g = gain[x.order + y.order + z.order];
        if (g == 0.0) continue;
        const double r = std::max(std::sqrt(r2), 1e-3);
        const long idx = std::lround(r * samples_per_meter);
        if (idx >= s.rir_length) continue;
        rir.taps[idx] += g / (4.0 * std::numbers::pi * r);
      }
    }
  }
  HighPass(rir.taps, s.sample_rate);
  return rir;
}

std::vector<double> RenderObservation(std::span<const double> clean,
                                      double clean_sample_rate,
                                      const ImpulseResponse &rir) {
  Require(!clean.empty(), ErrorKind::kInvalidInput, "empty clean signal");
  Require(!rir.taps.empty(), ErrorKind::kInvalidInput, "empty impulse response");
  Require(clean_sample_rate == rir.sample_rate, ErrorKind::kInvalidInput,
          "sample-rate mismatch: signal " + std::to_string(clean_sample_rate) +
              " Hz vs rir " + std::to_string(rir.sample_rate) + " Hz");
  std::vector<double> out(clean.size(), 0.0);
  if (static_cast<std::size_t>(rir.start) >= clean.size()) return out;
  const std::size_t need = clean.size() - rir.start;
  auto full = FftConvolve(clean.first(need),
                          std::span<const double>(rir.taps).first(
                              std::min(rir.taps.size(), need)));
  for (std::size_t t = 0; t < need; ++t) out[t + rir.start] = full[t];
  return out;
}

std::pair<ImpulseResponse, ImpulseResponse> SplitEarlyLate(
    const ImpulseResponse &rir, int boundary) {
  Require(boundary > 0 && boundary < rir.length(), ErrorKind::kInvalidInput,
          "early/late boundary " + std::to_string(boundary) +
              " outside (0, " + std::to_string(rir.length()) + ")");
  ImpulseResponse early, late;
  early.sample_rate = late.sample_rate = rir.sample_rate;
  early.start = rir.start;
  late.start = rir.start + boundary;
  early.taps.assign(rir.taps.begin(), rir.taps.begin() + boundary);
  late.taps.assign(rir.taps.begin() + boundary, rir.taps.end());
  return {std::move(early), std::move(late)};
}

double EstimateT60(const ImpulseResponse &rir) {
  const int n = rir.length();
  Require(n > 1, ErrorKind::kInvalidInput, "impulse response too short");
  std::vector<double> edc(n);
  double acc = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    acc += rir.taps[i] * rir.taps[i];
    edc[i] = acc;
  }
  Require(acc > 0.0, ErrorKind::kNumerical, "impulse response has no energy");

  int first = -1, last = -1;
  for (int i = 0; i < n; ++i) {
    double db = 10.0 * std::log10(edc[i] / acc);
    if (first < 0 && db <= -5.0) first = i;
    if (db <= -25.0) {
      last = i;
      break;
    }
  }
  Require(first >= 0 && last > first, ErrorKind::kNumerical,
          "energy decay curve does not reach -25 dB");

  // Least-squares line through (t, dB).
  double st = 0, sd = 0, stt = 0, std_ = 0;
  const int cnt = last - first + 1;
  for (int i = first; i <= last; ++i) {
    double t = i / rir.sample_rate;
    double db = 10.0 * std::log10(edc[i] / acc);
    st += t;
    sd += db;
    stt += t * t;
    std_ += t * db;
  }
  const double slope = (cnt * std_ - st * sd) / (cnt * stt - st * st);
  Require(slope < 0.0, ErrorKind::kNumerical, "energy decay curve not decaying");
  return -60.0 / slope;
}

RoomScenario DefaultScenario() {
  RoomScenario s;
  s.name = "sim12";
  s.room_dims = {6.0, 5.5, 3.0};
  s.source_pos = {3.0, 2.5, 1.5};
  s.t60_target = 0.83;
  s.sample_rate = 16000.0;
  s.rir_length = static_cast<int>(std::ceil(s.sample_rate * s.t60_target));
  const double sp = 0.1;  // intra-array spacing
  auto line = [&](Point3 center, int axis) {
    for (int i = -1; i <= 1; ++i) {
      Point3 p = center;
      p[axis] += i * sp;
      s.mic_positions.push_back(p);
    }
  };
  line({1.3, 1.3, 1.2}, 0);   // nodes 0-2, A = 0
  line({5.3, 4.4, 1.3}, 1);   // nodes 3-5, B = 3
  line({3.9, 1.2, 1.4}, 0);   // nodes 6-8, C = 6
  line({1.0, 4.5, 1.25}, 1);  // nodes 9-11
  s.report_nodes = {0, 3, 6};
  return s;
}

}  // namespace dwpe
