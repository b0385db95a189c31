// dwpe/test-dsp.cc

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

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "dwpe/error.h"
#include "dwpe/fft.h"
#include "dwpe/pipeline.h"
#include "dwpe/stft.h"
#include "test-util.h"

namespace dwpe {
namespace {

using testing::Gen;

TEST_CASE("fft matches direct dft and inverts") {
  Gen g(11);
  for (std::size_t n : {8u, 30u, 64u, 512u}) {
    auto x = g.Signal(n);
    RealFft fft(n);
    std::vector<Complex> spec(fft.bins());
    fft.Forward(x, spec);
    auto ref = testing::DirectDft(x);
    for (std::size_t k = 0; k < spec.size(); ++k)
      CHECK(std::abs(spec[k] - ref[k]) < 1e-9 * n);
    std::vector<double> back(n);
    fft.Inverse(spec, back);
    for (std::size_t t = 0; t < n; ++t) CHECK(back[t] == doctest::Approx(x[t]).epsilon(1e-12));
  }
}

TEST_CASE("fft zero-fills short input") {
  RealFft fft(16);
  std::vector<double> x = {1.0, 2.0};
  std::vector<Complex> spec(fft.bins());
  fft.Forward(x, spec);
  auto ref = testing::DirectDft({1.0, 2.0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  for (std::size_t k = 0; k < spec.size(); ++k) CHECK(std::abs(spec[k] - ref[k]) < 1e-12);
}

TEST_CASE("fft convolution matches the double loop") {
  Gen g(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = g.Signal(g.Int(1, 300));
    auto b = g.Signal(g.Int(1, 90));
    auto got = FftConvolve(a, b);
    auto want = testing::DirectConvolve(a, b);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-10);
  }
  CHECK(NextPow2(1) == 1);
  CHECK(NextPow2(513) == 1024);
}

TEST_CASE("window spec") {
  WindowSpec w = WindowSpec::ForSampleRate(16000.0);
  CHECK(w.frame_len == 512);
  CHECK(w.hop == 128);
  CHECK(w.bins() == 257);
  CHECK_NOTHROW(w.Validate());
  WindowSpec bad = w;
  bad.hop = 100;
  CHECK_THROWS_AS(bad.Validate(), Error);
  bad.frame_len = 511;
  CHECK_THROWS_AS(bad.Validate(), Error);
}

TEST_CASE("zero signal gives a zero spectrogram") {
  std::vector<double> x(4000, 0.0);
  auto s = Stft(x, WindowSpec{}, 16000.0);
  CHECK(s.frames() == FrameCount(x.size(), s.window));
  CHECK(s.data.norm() == 0.0);
}

TEST_CASE("bin-centred sinusoid peaks at its bin") {
  const WindowSpec w;
  for (int m : {3, 40, 200}) {
    std::vector<double> x(8192);
    for (std::size_t t = 0; t < x.size(); ++t)
      x[t] = std::cos(2.0 * std::numbers::pi * m * static_cast<double>(t) / w.frame_len);
    auto s = Stft(x, w, 16000.0);
    for (int n = 0; n + 4 < s.frames(); ++n) {
      Eigen::Index arg;
      s.data.row(n).cwiseAbs().maxCoeff(&arg);
      CHECK(arg == m);
    }
  }
}

TEST_CASE("a sample only reaches the frames covering it") {
  const WindowSpec w;
  std::vector<double> x(3000, 0.0);
  const int t0 = 1000;
  x[t0] = 1.0;
  auto s = Stft(x, w, 16000.0);
  for (int n = 0; n < s.frames(); ++n) {
    const bool covers = n * w.hop <= t0 && t0 < n * w.hop + w.frame_len;
    if (!covers) CHECK(s.data.row(n).norm() == 0.0);
    if (covers) CHECK(s.data.row(n).norm() > 0.0);
  }
}

TEST_CASE("stft is linear") {
  Gen g(3);
  auto a = g.Signal(5000), b = g.Signal(5000);
  std::vector<double> c(a.size());
  const double alpha = 0.7, beta = -2.5;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = alpha * a[i] + beta * b[i];
  auto sa = Stft(a, WindowSpec{}, 16000.0);
  auto sb = Stft(b, WindowSpec{}, 16000.0);
  auto sc = Stft(c, WindowSpec{}, 16000.0);
  CHECK((sc.data - alpha * sa.data - beta * sb.data).norm() < 1e-10 * sc.data.norm());
}

TEST_CASE("parseval holds per frame") {
  Gen g(8);
  const WindowSpec w;
  auto x = g.Signal(4000);
  auto s = Stft(x, w, 16000.0);
  auto win = w.AnalysisWindow();
  for (int n = 0; n < s.frames(); ++n) {
    double time = 0.0;
    for (int t = 0; t < w.frame_len; ++t) {
      const std::size_t i = static_cast<std::size_t>(n) * w.hop + t;
      const double v = i < x.size() ? x[i] * win[t] : 0.0;
      time += v * v;
    }
    double freq = 0.0;
    for (int k = 0; k < s.bins(); ++k) {
      const double p = std::norm(s.data(n, k));
      freq += (k == 0 || k == s.bins() - 1) ? p : 2.0 * p;
    }
    CHECK(freq == doctest::Approx(w.frame_len * time).epsilon(1e-10));
  }
}

TEST_CASE("interior samples survive the roundtrip") {
  Gen g(21);
  const WindowSpec w;
  auto x = g.Signal(6000);
  auto y = Istft(Stft(x, w, 16000.0));
  REQUIRE(y.size() >= x.size());
  for (std::size_t t = w.frame_len - w.hop; t + w.frame_len < x.size(); ++t)
    CHECK(std::abs(y[t] - x[t]) < 1e-10);
}

TEST_CASE("padded roundtrip is exact end to end") {
  Gen g(4);
  for (int trial = 0; trial < 10; ++trial) {
    auto x = g.Signal(g.Int(600, 20000));
    auto y = PaddedIstft(PaddedStft(x, WindowSpec{}, 16000.0), x.size());
    REQUIRE(y.size() == x.size());
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
      num += (y[t] - x[t]) * (y[t] - x[t]);
      den += x[t] * x[t];
    }
    CHECK(std::sqrt(num / den) < 1e-10);
  }
}

}  // namespace
}  // namespace dwpe
