// dwpe/test-wpe.cc

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
#include <vector>

#include "doctest.h"
#include "dwpe/error.h"
#include "dwpe/wpe.h"
#include "test-util.h"

namespace dwpe {
namespace {

using testing::Gen;

Spectrogram RandomSpec(Gen &g, int frames, int bins) {
  Spectrogram s;
  s.data = g.CMat(frames, bins);
  return s;
}

WpeParams Params(int tau, int order) {
  WpeParams p;
  p.tau = tau;
  p.filter_order = order;
  p.threads = 1;
  return p;
}

TEST_CASE("delayed vector indexing") {
  Gen g(1);
  Spectrogram s = RandomSpec(g, 10, 3);
  WpeParams p = Params(2, 3);
  for (int k = 0; k < 3; ++k) {
    CVector v = BuildDelayedVector(s, 7, k, p);
    REQUIRE(v.size() == 3);
    CHECK(v(0) == s.data(5, k));
    CHECK(v(1) == s.data(4, k));
    CHECK(v(2) == s.data(3, k));
  }
  // Frames before the signal read as zero.
  CHECK(BuildDelayedVector(s, 1, 0, p).norm() == 0.0);
  CVector edge = BuildDelayedVector(s, 3, 0, p);
  CHECK(edge(0) == s.data(1, 0));
  CHECK(edge(1) == s.data(0, 0));
  CHECK(edge(2) == Complex(0.0));
  CHECK(BuildDelayedVector(s, 6, 1, Params(2, 1))(0) == s.data(4, 1));
}

TEST_CASE("delayed and stacked matrices agree with the vector builder") {
  Gen g(2);
  std::vector<Spectrogram> ch = {RandomSpec(g, 12, 2), RandomSpec(g, 12, 2),
                                 RandomSpec(g, 12, 2)};
  WpeParams p = Params(3, 2);
  for (int k = 0; k < 2; ++k) {
    CMatrix x = StackedMatrix(ch, k, p);
    REQUIRE(x.rows() == 12);
    REQUIRE(x.cols() == 6);
    for (int n = 0; n < 12; ++n)
      for (int m = 0; m < 3; ++m) {
        CVector v = BuildDelayedVector(ch[m], n, k, p);
        for (int l = 0; l < 2; ++l) CHECK(x(n, m * 2 + l) == v(l));
      }
    CHECK(DelayedMatrix(ch[1], k, p) == x.middleCols(2, 2));
  }
}

TEST_CASE("prediction subtracts the conjugate inner product") {
  CVector x(2), w(2);
  x << Complex(1, 2), Complex(-3, 0.5);
  w << Complex(0.5, -1), Complex(2, 1);
  const Complex expected =
      Complex(4, 4) - (std::conj(w(0)) * x(0) + std::conj(w(1)) * x(1));
  CHECK(std::abs(PredictDesired(Complex(4, 4), x, w) - expected) < 1e-15);
  CHECK(PredictDesired(Complex(4, 4), x, CVector::Zero(2)) == Complex(4, 4));
  CHECK(PredictDesired(Complex(4, 4), CVector::Zero(2), w) == Complex(4, 4));
  CHECK_THROWS_AS(PredictDesired(0.0, x, CVector::Zero(3)), Error);

  Gen g(3);
  CMatrix xs = g.CMat(6, 2);
  CVector t = g.CVec(6);
  CVector d = PredictBin(t, xs, w);
  for (int n = 0; n < 6; ++n)
    CHECK(std::abs(d(n) - PredictDesired(t(n), xs.row(n).transpose(), w)) <
          1e-14);
}

TEST_CASE("psd update applies the floor elementwise") {
  CMatrix d(1, 2);
  d(0, 0) = std::sqrt(0.5);
  d(0, 1) = 0.0;
  PsdEstimate p = UpdatePsd(d, 1e-4);
  CHECK(p.sigma(0, 0) == doctest::Approx(0.5));
  CHECK(p.sigma(0, 1) == 1e-4);

  Gen g(4);
  CMatrix r = 0.01 * g.CMat(20, 7);
  PsdEstimate q = UpdatePsd(r, 1e-4);
  for (int k = 0; k < 7; ++k)
    for (int n = 0; n < 20; ++n)
      CHECK(q.sigma(n, k) == std::max(std::norm(r(n, k)), 1e-4));
}

TEST_CASE("normal equations match the double loop") {
  Gen g(5);
  CMatrix x = g.CMat(3, 2);
  CVector t = g.CVec(3);
  RVector sigma(3);
  sigma << 0.5, 2.0, 1.3;
  NormalEquations ne = AccumulateNormalEquations(x, t, sigma);
  CMatrix z = CMatrix::Zero(2, 2);
  CVector q = CVector::Zero(2);
  for (int n = 0; n < 3; ++n) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j)
        z(i, j) += x(n, i) * std::conj(x(n, j)) / sigma(n);
      q(i) += x(n, i) * std::conj(t(n)) / sigma(n);
    }
  }
  CHECK((ne.z - z).norm() < 1e-14);
  CHECK((ne.q - q).norm() < 1e-14);
  CHECK((ne.z - ne.z.adjoint()).norm() < 1e-15 * ne.z.norm());

  // Unit basis, sigma = 1.
  CMatrix e = CMatrix::Zero(1, 3);
  e(0, 0) = 1.0;
  CVector ref(1);
  ref(0) = Complex(2, -1);
  NormalEquations one = AccumulateNormalEquations(e, ref, RVector::Ones(1));
  CHECK(one.z(0, 0) == Complex(1.0));
  CHECK(one.z.norm() == 1.0);
  CHECK(one.q(0) == std::conj(ref(0)));

  RVector bad = sigma;
  bad(1) = 0.0;
  CHECK_THROWS_AS(AccumulateNormalEquations(x, t, bad), Error);
  CMatrix inf = x;
  inf(0, 0) = Complex(INFINITY, 0.0);
  try {
    AccumulateNormalEquations(inf, t, sigma);
    FAIL("expected a numerical error");
  } catch (const Error &err) {
    CHECK(err.kind() == ErrorKind::kNumerical);
  }
}

TEST_CASE("solved weights satisfy the normal equations and are sigma-scale invariant") {
  Gen g(6);
  CMatrix x = g.CMat(60, 5);
  CVector t = g.CVec(60);
  RVector sigma(60);
  for (int n = 0; n < 60; ++n) sigma(n) = g.Uniform(0.1, 3.0);
  SolveInfo info;
  CVector w = SolveBin(x, t, sigma, 0.0, &info);
  NormalEquations ne = AccumulateNormalEquations(x, t, sigma);
  CHECK((ne.z * w - ne.q).norm() <= 1e-8 * ne.q.norm());
  CVector w_scaled = SolveBin(x, t, 7.5 * sigma, 0.0);
  CHECK(testing::RelErr(w_scaled, w) < 1e-12);

  // Any perturbation raises the weighted squared error.
  auto quad = [&](const CVector &v) {
    CVector d = PredictBin(t, x, v);
    double s = 0.0;
    for (int n = 0; n < 60; ++n) s += std::norm(d(n)) / sigma(n);
    return s;
  };
  const double best = quad(w);
  for (int trial = 0; trial < 20; ++trial)
    CHECK(quad(w + 1e-3 * g.CVec(5)) >= best);
}

TEST_CASE("cost evaluates the negative log-likelihood") {
  CMatrix d(2, 1);
  d << Complex(1, 0), Complex(0, 2);
  RMatrix s(2, 1);
  s << 2.0, 4.0;
  const double pi = std::acos(-1.0);
  CHECK(WpeCost(d, s) ==
        doctest::Approx(0.5 + std::log(pi * 2.0) + 1.0 + std::log(pi * 4.0)));
}

TEST_CASE("relative psd floor scales the mean power") {
  Spectrogram a;
  a.data = CMatrix::Constant(4, 3, Complex(2.0, 0.0));
  std::vector<Spectrogram> ch = {a};
  CHECK(RelativePsdFloor(ch, 1e-3) == doctest::Approx(4e-3));
}

TEST_CASE("parameter validation") {
  WpeParams p;
  CHECK_NOTHROW(p.Validate());
  p.tau = 0;
  CHECK_THROWS_AS(p.Validate(), Error);
  p = WpeParams{};
  p.filter_order = 0;
  CHECK_THROWS_AS(p.Validate(), Error);
  p = WpeParams{};
  p.psd_floor = 0.0;
  CHECK_THROWS_AS(p.Validate(), Error);
  p = WpeParams{};
  p.max_iters = 0;
  CHECK_THROWS_AS(p.Validate(), Error);
}

TEST_CASE("nothing to predict leaves the input unchanged") {
  // White frames carry no delayed correlation, so the weights stay small.
  Gen g(7);
  std::vector<Spectrogram> ch = {RandomSpec(g, 2000, 4)};
  WpeParams p = Params(2, 4);
  p.psd_floor = 1e-6;
  p.max_iters = 3;
  WpeResult r = RunWpe(ch, 0, p);
  CHECK(r.trace.back().mean_weight_norm < 0.1);
  CHECK((r.desired.data - ch[0].data).norm() < 0.1 * ch[0].data.norm());
}

TEST_CASE("model-matched two-channel instance is recovered") {
  Gen g(8);
  const int tau = 2, order = 8;
  auto mm = testing::MakeModelMatched(g, 2, order, tau, 800, 4);
  std::vector<Spectrogram> ch(2);
  for (int m = 0; m < 2; ++m) ch[m].data = mm.channels[m];
  WpeParams p = Params(tau, order);
  p.psd_floor = 1e-10;
  p.max_iters = 5;
  p.convergence_tol = 0.0;
  WpeResult r = RunWpe(ch, 0, p);
  const double before = (ch[0].data - mm.desired).squaredNorm();
  const double after = (r.desired.data - mm.desired).squaredNorm();
  CHECK(10.0 * std::log10(before / after) >= 10.0);
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    CHECK(r.trace[i].cost <= r.trace[i - 1].cost + 1e-6 * std::abs(r.trace[i - 1].cost));
  // With the true weights the prediction is exact.
  for (int k = 0; k < 4; ++k) {
    CMatrix x = StackedMatrix(ch, k, p);
    CVector d = PredictBin(ch[0].data.col(k), x, mm.weights[k]);
    CHECK((d - mm.desired.col(k)).norm() < 1e-10 * mm.desired.col(k).norm());
  }
}

TEST_CASE("single channel is the one-channel centralized estimator") {
  Gen g(9);
  auto mm = testing::MakeModelMatched(g, 1, 3, 2, 300, 3);
  std::vector<Spectrogram> ch(1);
  ch[0].data = mm.channels[0];
  WpeParams p = Params(2, 3);
  p.max_iters = 4;
  WpeResult r = RunWpe(ch, 0, p);
  REQUIRE(r.weights.size() == 3);
  CHECK(r.weights[0].size() == 3);
  CHECK(r.desired.frames() == 300);
  CHECK_THROWS_AS(RunWpe(ch, 1, p), Error);
}

}  // namespace
}  // namespace dwpe
