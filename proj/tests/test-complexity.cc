// dwpe/test-complexity.cc

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

#include "doctest.h"
#include "dwpe/complexity.h"
#include "dwpe/error.h"
#include "dwpe/hermitian-solve.h"
#include "dwpe/wpe.h"
#include "test-util.h"

namespace dwpe {
namespace {

using testing::Gen;

// Accumulates Z and q the naive way while tallying every complex
// multiplication and division it performs.
struct Tallied {
  CMatrix z;
  CVector q;
  std::int64_t mul = 0;
  std::int64_t div = 0;
};

Tallied TallyAccumulation(const CMatrix &x, const CVector &t,
                          const RVector &sigma) {
  const int d = static_cast<int>(x.cols());
  Tallied out;
  out.z = CMatrix::Zero(d, d);
  out.q = CVector::Zero(d);
  for (int n = 0; n < x.rows(); ++n) {
    CVector u(d);
    for (int i = 0; i < d; ++i) {
      u(i) = x(n, i) / sigma(n);
      ++out.div;
    }
    const Complex v = std::conj(t(n)) / sigma(n);
    ++out.div;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        out.z(i, j) += u(i) * std::conj(x(n, j));
        ++out.mul;
      }
    for (int i = 0; i < d; ++i) {
      out.q(i) += x(n, i) * v;
      ++out.mul;
    }
  }
  return out;
}

TEST_CASE("solve dimensions") {
  CHECK(SolveDimension(Mode::kDistributed, 12, 26) == 37);
  CHECK(SolveDimension(Mode::kCentralized, 12, 26) == 312);
  CHECK(SolveDimension(Mode::kSingle, 12, 26) == 26);
  CHECK(SolveDimension(Mode::kDistributed, 1, 26) ==
        SolveDimension(Mode::kCentralized, 1, 26));
  CHECK_THROWS_AS(SolveDimension(Mode::kDistributed, 0, 26), Error);
  CHECK_THROWS_AS(SolveDimension(Mode::kDistributed, 3, 0), Error);
}

TEST_CASE("accumulation counts match an instrumented run") {
  Gen g(1);
  const int m = 2, l = 2, frames = 3;
  for (Mode mode : {Mode::kCentralized, Mode::kDistributed}) {
    const int d = static_cast<int>(SolveDimension(mode, m, l));
    CMatrix x = g.CMat(frames, d);
    CVector t = g.CVec(frames);
    RVector sigma = RVector::Constant(frames, 0.7);
    Tallied tally = TallyAccumulation(x, t, sigma);
    OpCount c = CountAccumulationOps(mode, m, l, frames);
    CHECK(c.multiplications == tally.mul);
    CHECK(c.divisions == tally.div);
    NormalEquations ne = AccumulateNormalEquations(x, t, sigma);
    CHECK((ne.z - tally.z).norm() < 1e-12);
    CHECK((ne.q - tally.q).norm() < 1e-12);
  }
}

TEST_CASE("solve counts match the instrumented factorization") {
  Gen g(2);
  OpTally tally;
  SolveWeights(g.Hpd(4), g.CVec(4), 0.0, nullptr, &tally);
  CHECK(CountSolveOps(Mode::kSingle, 1, 4).solve_cost == tally.total());
  CHECK(CountSolveOps(Mode::kDistributed, 1, 4).solve_cost ==
        CountSolveOps(Mode::kCentralized, 1, 4).solve_cost);
  CHECK(CubicSolveCost(37) == 37 * 37 * 37);
}

TEST_CASE("headline reduction factors at three decimals") {
  struct Row {
    int m, l;
    double solve;
  };
  for (Row r : {Row{6, 26, 0.009}, Row{9, 26, 0.003}, Row{12, 26, 0.002},
                Row{4, 40, 0.021}, Row{6, 40, 0.007}, Row{8, 40, 0.003}}) {
    BetaReport b = ComputeBetaReport(r.m, r.l, 100);
    CHECK(std::round(b.beta_solve * 1000.0) / 1000.0 == doctest::Approx(r.solve));
    const double ratio = static_cast<double>(r.l + r.m) / (r.m * r.l);
    CHECK(b.beta_mul == doctest::Approx(ratio * ratio));
    CHECK(b.beta_div == doctest::Approx(ratio));
    CHECK(b.beta_mul_network == doctest::Approx(r.m * b.beta_mul));
    const double d = r.l + r.m - 1.0, c = static_cast<double>(r.m) * r.l;
    CHECK(b.cubic_solve == doctest::Approx(std::pow(d / c, 3)));
    CHECK(b.exact_mul == doctest::Approx((d * d + d) / (c * c + c)));
    CHECK(b.exact_div == doctest::Approx((d + 1) / (c + 1)));
  }
  CHECK_THROWS_AS(ComputeBetaReport(1, 26, 10), Error);
}

TEST_CASE("reduction factors lie in (0, 1) and fall with M") {
  for (int l : {1, 4, 26, 40}) {
    BetaReport prev = ComputeBetaReport(2, l, 50);
    for (int m = 2; m <= 16; ++m) {
      BetaReport b = ComputeBetaReport(m, l, 50);
      for (double v : {b.exact_mul, b.exact_div, b.exact_solve, b.cubic_solve}) {
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
      }
      // The headline convention counts L + M slots, which only undercuts the
      // fusion node once L is past a handful of taps.
      if (l >= 4)
        for (double v : {b.beta_mul, b.beta_div, b.beta_solve}) {
          CHECK(v > 0.0);
          CHECK(v < 1.0);
        }
      if (l > 1) {
        CHECK(b.exact_solve < 1.0);
        CHECK(b.cubic_solve < 1.0);
      }
      CHECK(b.exact_mul <= prev.exact_mul + 1e-15);
      CHECK(b.exact_div <= prev.exact_div + 1e-15);
      CHECK(b.exact_solve <= prev.exact_solve + 1e-15);
      CHECK(b.cubic_solve <= prev.cubic_solve + 1e-15);
      if (l >= 4) {
        CHECK(b.beta_mul <= prev.beta_mul + 1e-15);
        CHECK(b.beta_solve <= prev.beta_solve + 1e-15);
      }
      prev = b;
    }
  }
}

TEST_CASE("transmission reduction") {
  CHECK(TransmissionReduction(12, 26) == doctest::Approx(1.0 - 11.0 / 286.0));
  CHECK(TransmissionReduction(8, 40) == doctest::Approx(0.975));
  CHECK_THROWS_AS(TransmissionReduction(1, 40), Error);
}

}  // namespace
}  // namespace dwpe
