// dwpe/acceptance-main.cc

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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Pass criterion numbers as arguments
// to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dwpe/complexity.h"
#include "dwpe/danse.h"
#include "dwpe/hermitian-solve.h"
#include "dwpe/netsim.h"
#include "dwpe/pipeline.h"
#include "dwpe/stft.h"
#include "dwpe/synth.h"
#include "dwpe/wpe.h"
#include "test-util.h"

namespace dwpe {
namespace {

using testing::Gen;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Expect(bool cond, const std::string &what) {
    if (!cond) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

constexpr double kFs = 16000.0;
constexpr double kSeconds = 10.0;
constexpr std::uint64_t kSeed = 1;

void TransmissionAccounting(Outcome &o) {
  struct Row {
    int m, l;
    std::int64_t cent, dist;
  };
  const Row rows[] = {{6, 26, 130, 5},  {9, 26, 208, 8},  {12, 26, 286, 11},
                      {4, 40, 120, 3},  {6, 40, 200, 5},  {8, 40, 280, 7}};
  for (const Row &r : rows) {
    const auto c = CountTransmissions(Mode::kCentralized, r.m, r.l);
    const auto d = CountTransmissions(Mode::kDistributed, r.m, r.l);
    o.Expect(c == r.cent, "T centralized M=" + std::to_string(r.m));
    o.Expect(d == r.dist, "T distributed M=" + std::to_string(r.m));
  }
  const double sim = 100.0 * TransmissionReduction(12, 26);
  const double real = 100.0 * TransmissionReduction(8, 40);
  o.Expect(std::round(sim * 100.0) == 9615.0, "96.15% reduction");
  o.Expect(std::round(real * 100.0) == 9750.0, "97.5% reduction");
  o.detail << "reductions " << sim << "% and " << real << "%";
}

void FilterDimensions(Outcome &o) {
  const std::pair<int, int> sim[] = {{6, 31}, {9, 34}, {12, 37}};
  const std::pair<int, int> real[] = {{4, 43}, {6, 45}, {8, 47}};
  for (auto [m, d] : sim)
    o.Expect(SolveDimension(Mode::kDistributed, m, 26) == d,
             "L=26 M=" + std::to_string(m));
  for (auto [m, d] : real)
    o.Expect(SolveDimension(Mode::kDistributed, m, 40) == d,
             "L=40 M=" + std::to_string(m));
  o.detail << "dimensions 31/34/37 and 43/45/47";
}

void BetaAgreement(Outcome &o) {
  struct Row {
    int m, l;
    double expected;
  };
  const Row rows[] = {{6, 26, 0.009}, {9, 26, 0.003}, {12, 26, 0.002},
                      {4, 40, 0.021}, {6, 40, 0.007}, {8, 40, 0.003}};
  const int frames = 1000;
  for (int l : {26, 40}) {
    BetaReport prev{};
    bool first = true;
    for (const Row &r : rows) {
      if (r.l != l) continue;
      BetaReport b = ComputeBetaReport(r.m, r.l, frames);
      const double rounded = std::round(b.beta_solve * 1000.0) / 1000.0;
      o.Expect(std::abs(rounded - r.expected) < 1e-12,
               "beta_solve M=" + std::to_string(r.m) + " L=" +
                   std::to_string(r.l));
      o.Expect(b.beta_mul < 1.0 && b.beta_div < 1.0, "beta < 1");
      // Same order of magnitude as the reference multiplication and
      // division rows, which span roughly 0.01 to 0.3.
      o.Expect(b.beta_mul > 1e-3 && b.beta_mul < 1.0, "beta_mul magnitude");
      o.Expect(b.beta_div > 1e-2 && b.beta_div < 1.0, "beta_div magnitude");
      if (!first) {
        o.Expect(b.beta_mul < prev.beta_mul, "beta_mul decreasing");
        o.Expect(b.beta_div < prev.beta_div, "beta_div decreasing");
        o.Expect(b.beta_solve < prev.beta_solve, "beta_solve decreasing");
      }
      o.detail << "M=" << r.m << ",L=" << r.l << ":" << rounded << " ";
      prev = b;
      first = false;
    }
  }
}

void SolverOracle(Outcome &o) {
  Gen g(404);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = g.Int(2, 12);
    CMatrix z = g.Hpd(n);
    CVector q = g.CVec(n);
    CVector w = SolveWeights(z, q, 0.0);
    worst = std::max(worst, testing::RelErr(w, testing::EliminationSolve(z, q)));
  }
  o.Expect(worst <= 1e-10, "relative error");
  o.detail << "worst relative error " << worst;
}

void StftFidelity(Outcome &o) {
  Gen g(505);
  const WindowSpec w = WindowSpec::ForSampleRate(kFs);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto x = g.Signal(static_cast<std::size_t>(g.Int(2000, 48000)));
    auto y = PaddedIstft(PaddedStft(x, w, kFs), x.size());
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
      num += (y[t] - x[t]) * (y[t] - x[t]);
      den += x[t] * x[t];
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  o.Expect(w.frame_len == 512 && w.hop == 128, "32 ms / 75% framing");
  o.Expect(worst <= 1e-8, "roundtrip error");
  o.detail << "worst relative error " << worst;
}

void ModelMatched(Outcome &o) {
  Gen g(606);
  const int order = 4, tau = 2;
  // Weight norm 0.4 puts the late reverberation at about the energy of the
  // desired signal (0 dB direct-to-reverberant ratio).
  auto mm = testing::MakeModelMatched(g, 2, order, tau, 1000, 16, 0.4);
  std::vector<Spectrogram> ch(2);
  for (int m = 0; m < 2; ++m) ch[m].data = mm.channels[m];
  WpeParams p;
  p.tau = tau;
  p.filter_order = order;
  p.max_iters = 5;
  p.convergence_tol = 0.0;
  p.psd_floor = RelativePsdFloor(ch, 1e-8);
  WpeResult r = RunWpe(ch, 0, p);
  const double before = (ch[0].data - mm.desired).squaredNorm();
  const double after = (r.desired.data - mm.desired).squaredNorm();
  const double gain = 10.0 * std::log10(before / after);
  o.Expect(gain >= 20.0, "residual reduction >= 20 dB");
  o.Expect(static_cast<int>(r.trace.size()) <= 5, "within 5 iterations");
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    o.Expect(r.trace[i].cost <=
                 r.trace[i - 1].cost + 1e-6 * std::abs(r.trace[i - 1].cost),
             "cost non-increasing at iteration " + std::to_string(i + 1));
  const double drr = 10.0 * std::log10(mm.desired.squaredNorm() / before);
  o.detail << "DRR " << drr << " dB, residual reduction " << gain
           << " dB; cost";
  for (const auto &it : r.trace) o.detail << " " << it.cost;
}

Scene DefaultScene() {
  auto clean = SyntheticSpeech(kSeconds, kFs, kSeed);
  return SimulateScene(DefaultScenario(), clean, kFs);
}

DereverbOptions QualityOptions(Mode mode) {
  DereverbOptions opt;
  opt.mode = mode;
  opt.params.tau = 4;
  opt.params.filter_order = 26;
  opt.collab_period = 2;
  return opt;
}

void ReductionIdentity(Outcome &o) {
  auto clean = SyntheticSpeech(kSeconds, kFs, kSeed);
  Scene scene = SimulateScene(Subnetwork(DefaultScenario(), 1), clean, kFs);
  auto single = RunDereverb(scene.observations, kFs, QualityOptions(Mode::kSingle));
  auto dist =
      RunDereverb(scene.observations, kFs, QualityOptions(Mode::kDistributed));
  const auto &a = single.estimates.at(0);
  const auto &b = dist.estimates.at(0);
  std::size_t diff = 0;
  for (std::size_t t = 0; t < a.size(); ++t) diff += a[t] != b[t];
  o.Expect(a.size() == b.size() && diff == 0, "elementwise identity");
  o.Expect(single.rounds == dist.rounds, "same iteration count");
  o.detail << diff << " differing samples of " << a.size() << ", "
           << dist.rounds << " iterations";
}

void DirectionalQuality(Outcome &o) {
  Scene scene = DefaultScene();
  const auto &report = scene.scenario.report_nodes;
  DereverbOptions single_opt = QualityOptions(Mode::kSingle);
  single_opt.nodes = report;
  auto single = RunDereverb(scene.observations, kFs, single_opt);
  auto dist = RunDereverb(scene.observations, kFs,
                          QualityOptions(Mode::kDistributed));
  auto s = ScoreNodes(scene, single.estimates);
  std::map<NodeId, std::vector<double>> dist_report;
  for (NodeId n : report) dist_report[n] = dist.estimates.at(n);
  auto d = ScoreNodes(scene, dist_report);
  const char labels[] = "ABC";
  for (std::size_t i = 0; i < report.size(); ++i) {
    const MetricReport &u = s[i].unprocessed;
    const MetricReport &sp = s[i].processed;
    const MetricReport &dp = d[i].processed;
    const std::string node = std::string(1, labels[i % 3]);
    o.Expect(dp.fsnr >= sp.fsnr + 0.2, node + " F-SNR distributed > single");
    o.Expect(sp.fsnr >= u.fsnr + 0.2, node + " F-SNR single > unprocessed");
    o.Expect(dp.cd <= sp.cd - 0.1, node + " CD distributed < single");
    o.Expect(sp.cd <= u.cd - 0.1, node + " CD single < unprocessed");
    o.detail << node << "(node " << report[i] << ") CD " << u.cd << "/"
             << sp.cd << "/" << dp.cd << " F-SNR " << u.fsnr << "/"
             << sp.fsnr << "/" << dp.fsnr << "; ";
  }
  o.detail << "(unprocessed/single/distributed)";
}

void ConvergenceProperty(Outcome &o) {
  auto clean = SyntheticSpeech(kSeconds, kFs, kSeed);
  for (int m : {6, 9, 12}) {
    Scene scene = SimulateScene(Subnetwork(DefaultScenario(), m), clean, kFs);
    DereverbOptions opt = QualityOptions(Mode::kDistributed);
    opt.params.max_iters = 30;
    auto out = RunDereverb(scene.observations, kFs, opt);
    const auto &tr = out.trace;
    // Worst node per round.
    std::vector<double> worst(tr.rounds.size(), 0.0);
    for (std::size_t r = 0; r < tr.rounds.size(); ++r)
      for (double e : tr.errors[r])
        if (!std::isnan(e)) worst[r] = std::max(worst[r], e);
    bool below = false;
    for (double e : worst) below = below || e < 1e-3;
    o.Expect(below, "M=" + std::to_string(m) + " below 1e-3 within 30 rounds");
    bool tail_ok = true;
    const std::size_t from = worst.size() > 10 ? worst.size() - 10 : 0;
    for (std::size_t i = 0; i < tr.nodes.size(); ++i) {
      auto col = tr.ForNode(i);
      for (std::size_t r = from + 1; r < col.size(); ++r)
        if (col[r] > col[r - 1]) tail_ok = false;
    }
    o.Expect(tail_ok, "M=" + std::to_string(m) + " non-increasing tail");
    double best = worst.empty() ? NAN : worst.front();
    for (double e : worst) best = std::min(best, e);
    o.detail << "M=" << m << ": " << out.rounds << " rounds, min worst-node "
             << best << ", last " << (worst.empty() ? NAN : worst.back())
             << "; ";
  }
}

void GccPhatSync(Outcome &o) {
  Gen g(1010);
  auto src = g.Signal(48000);
  const int shifts[] = {0, 1, -1, 17, -17, 250, -731, 1234, -1500, 1999, -1999,
                        2000, -2000};
  int failures = 0;
  for (bool noisy : {false, true}) {
    for (int d : shifts) {
      auto a = src;
      auto b = testing::Delay(src, d);
      if (noisy) {
        const double sigma = std::sqrt(0.01);  // 20 dB SNR on unit power
        for (auto &v : a) v += sigma * g.Normal();
        for (auto &v : b) v += sigma * g.Normal();
      }
      const int lag = GccPhatLag(a, b, 2000);
      if (lag != d) {
        ++failures;
        o.detail << (noisy ? "noisy" : "clean") << " shift " << d << " -> "
                 << lag << "; ";
      }
      SyncResult s = Synchronize({a, b}, 0, 2000);
      if (s.lags[1] != d) ++failures;
    }
  }
  o.Expect(failures == 0, "exact lag recovery");
  o.detail << "shifts up to +/-2000, clean and 20 dB SNR, " << failures
           << " misses";
}

}  // namespace
}  // namespace dwpe

int main(int argc, char **argv) {
  using namespace dwpe;
  struct Criterion {
    int id;
    const char *name;
    std::function<void(Outcome &)> run;
  };
  const std::vector<Criterion> all = {
      {1, "transmission accounting", TransmissionAccounting},
      {2, "filter dimensions", FilterDimensions},
      {3, "beta_solve agreement", BetaAgreement},
      {4, "solver oracle equivalence", SolverOracle},
      {5, "STFT fidelity", StftFidelity},
      {6, "model-matched exactness", ModelMatched},
      {7, "distributed reduction identity", ReductionIdentity},
      {8, "directional quality", DirectionalQuality},
      {9, "convergence", ConvergenceProperty},
      {10, "GCC-PHAT synchronization", GccPhatSync},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto &c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    std::printf("criterion %2d %s: %s (%.1f s) %s\n", c.id,
                o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
