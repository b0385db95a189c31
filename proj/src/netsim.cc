// dwpe/netsim.cc

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

#include "dwpe/netsim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>

#include "dwpe/error.h"
#include "dwpe/fft.h"

namespace dwpe {

const char *ModeName(Mode mode) {
  switch (mode) {
    case Mode::kSingle: return "single";
    case Mode::kCentralized: return "centralized";
    case Mode::kDistributed: return "distributed";
  }
  return "unknown";
}

Mode ParseMode(std::string_view name) {
  if (name == "single") return Mode::kSingle;
  if (name == "centralized") return Mode::kCentralized;
  if (name == "distributed") return Mode::kDistributed;
  Fail(ErrorKind::kInvalidInput, "unknown mode '" + std::string(name) + "'");
}

std::int64_t CountTransmissions(Mode mode, int num_nodes, int filter_order) {
  Require(num_nodes >= 1, ErrorKind::kInvalidInput, "need at least one node");
  Require(filter_order >= 1, ErrorKind::kInvalidInput,
          "filter order must be >= 1");
  switch (mode) {
    case Mode::kSingle: return 0;
    case Mode::kCentralized:
      return static_cast<std::int64_t>(num_nodes - 1) * filter_order;
    case Mode::kDistributed: return num_nodes - 1;
  }
  Fail(ErrorKind::kInvalidInput, "unknown mode");
}

std::int64_t TransmissionLedger::Total() const {
  std::int64_t t = 0;
  for (const auto &e : entries_) t += e.units;
  return t;
}

std::int64_t TransmissionLedger::TotalFor(Mode mode) const {
  std::int64_t t = 0;
  for (const auto &e : entries_)
    if (e.mode == mode) t += e.units;
  return t;
}

std::int64_t TransmissionLedger::ReceivedBy(NodeId node) const {
  std::int64_t t = 0;
  for (const auto &e : entries_)
    if (e.to == node) t += e.units;
  return t;
}

std::vector<int> TransmissionLedger::ActiveRounds() const {
  std::set<int> rounds;
  for (const auto &e : entries_) rounds.insert(e.round);
  return {rounds.begin(), rounds.end()};
}

void TransmissionLedger::WriteCsv(std::ostream &os,
                                  const std::string &prefix_header,
                                  const std::string &prefix) const {
  os << prefix_header << "round,mode,from,to,units\n";
  for (const auto &e : entries_)
    os << prefix << e.round << ',' << ModeName(e.mode) << ',' << e.from << ','
       << e.to << ',' << e.units << '\n';
}

Network::Network(int num_nodes, Mode mode)
    : num_nodes_(num_nodes), mode_(mode), last_round_(num_nodes, 0) {
  Require(num_nodes >= 1, ErrorKind::kInvalidInput, "need at least one node");
}

void Network::Submit(Message msg) {
  std::lock_guard<std::mutex> lock(mu_);
  if (msg.from < 0 || msg.from >= num_nodes_)
    Fail(ErrorKind::kProtocol, "unknown sender " + std::to_string(msg.from));
  if (msg.to != kBroadcast && (msg.to < 0 || msg.to >= num_nodes_ ||
                               msg.to == msg.from))
    Fail(ErrorKind::kProtocol,
         "invalid recipient " + std::to_string(msg.to) + " from node " +
             std::to_string(msg.from));
  if (msg.round < last_round_[msg.from])
    Fail(ErrorKind::kProtocol, "node " + std::to_string(msg.from) +
                                   " submitted for past round " +
                                   std::to_string(msg.round));
  for (const auto &p : pending_)
    if (p.from == msg.from && p.round == msg.round &&
        (p.to == kBroadcast || msg.to == kBroadcast || p.to == msg.to))
      Fail(ErrorKind::kProtocol, "duplicate submission by node " +
                                     std::to_string(msg.from) + " in round " +
                                     std::to_string(msg.round));
  last_round_[msg.from] = msg.round;
  pending_.push_back(std::move(msg));
}

std::vector<std::vector<Message>> Network::DeliverRound(int round) {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<Message> now;
  std::vector<Message> later;
  for (auto &m : pending_)
    (m.round == round ? now : later).push_back(std::move(m));
  pending_ = std::move(later);
  std::stable_sort(now.begin(), now.end(),
                   [](const Message &a, const Message &b) {
                     return a.from != b.from ? a.from < b.from : a.to < b.to;
                   });

  std::vector<std::vector<Message>> inboxes(num_nodes_);
  for (const auto &m : now) {
    for (NodeId to = 0; to < num_nodes_; ++to) {
      if (to == m.from) continue;
      if (m.to != kBroadcast && m.to != to) continue;
      Message copy = m;
      copy.to = to;
      ledger_.Record({round, mode_, m.from, to,
                      m.payload_size() * m.units_per_scalar});
      inboxes[to].push_back(std::move(copy));
    }
  }
  return inboxes;
}

int GccPhatLag(std::span<const double> a, std::span<const double> b,
               int max_lag) {
  Require(!a.empty() && !b.empty(), ErrorKind::kInvalidInput,
          "gcc-phat needs non-empty signals");
  Require(max_lag >= 0 && static_cast<std::size_t>(max_lag) <
                              std::min(a.size(), b.size()),
          ErrorKind::kInvalidInput, "max_lag must be below the signal length");
  auto energy = [](std::span<const double> x) {
    double e = 0.0;
    for (double v : x) e += v * v;
    return e;
  };
  if (energy(a) == 0.0 || energy(b) == 0.0)
    Fail(ErrorKind::kUndefinedLag, "gcc-phat lag undefined for a silent signal");

  // Long signals: average the phase-normalized cross-spectra of Hann
  // windowed segments. A single whole-signal transform lets one strong
  // reflection path win in reverberant rooms; averaging keeps the direct
  // path consistent across segments while reflections decorrelate.
  const std::size_t len = std::max(a.size(), b.size());
  std::size_t seg = std::max<std::size_t>(
      kGccSegment, NextPow2(4 * static_cast<std::size_t>(max_lag)));
  const bool whole = std::min(a.size(), b.size()) <= seg;
  if (whole) seg = len;
  const std::size_t n = whole ? NextPow2(a.size() + b.size()) : 2 * seg;
  const std::size_t step = whole ? len : seg / 2;

  RealFft fft(n);
  std::vector<double> window(seg, 1.0);
  if (!whole)
    for (std::size_t t = 0; t < seg; ++t)
      window[t] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * t / seg);
  std::vector<Complex> acc(fft.bins(), 0.0), fa(fft.bins()), fb(fft.bins());
  std::vector<double> xa(seg), xb(seg);
  for (std::size_t start = 0; start < len; start += step) {
    for (std::size_t t = 0; t < seg; ++t) {
      const std::size_t i = start + t;
      xa[t] = i < a.size() ? a[i] * window[t] : 0.0;
      xb[t] = i < b.size() ? b[i] * window[t] : 0.0;
    }
    fft.Forward(xa, fa);
    fft.Forward(xb, fb);
    double peak_mag = 0.0;
    for (std::size_t k = 0; k < fa.size(); ++k) {
      fa[k] = fb[k] * std::conj(fa[k]);
      peak_mag = std::max(peak_mag, std::abs(fa[k]));
    }
    const double guard = 1e-12 * peak_mag;
    for (std::size_t k = 0; k < fa.size(); ++k) {
      const double m = std::abs(fa[k]);
      if (m > guard) acc[k] += fa[k] / m;
    }
  }
  std::vector<double> r(n);
  fft.Inverse(acc, r);

  int best = 0;
  double best_val = -INFINITY;
  // Scan outward from zero so ties resolve to the smallest |lag|.
  for (int mag = 0; mag <= max_lag; ++mag) {
    for (int lag : {-mag, mag}) {
      double v = r[lag >= 0 ? lag : n + lag];
      if (v > best_val) {
        best_val = v;
        best = lag;
      }
      if (mag == 0) break;
    }
  }
  return best;
}

std::vector<double> ShiftSignal(std::span<const double> x, int lag) {
  const long n = static_cast<long>(x.size());
  std::vector<double> out(x.size(), 0.0);
  for (long t = 0; t < n; ++t) {
    long src = t - lag;
    if (src >= 0 && src < n) out[t] = x[src];
  }
  return out;
}

SyncResult Synchronize(const std::vector<std::vector<double>> &signals,
                       NodeId reference, int max_lag) {
  Require(!signals.empty(), ErrorKind::kInvalidInput, "nothing to synchronize");
  Require(reference >= 0 && reference < static_cast<int>(signals.size()),
          ErrorKind::kInvalidInput, "reference node out of range");
  SyncResult out;
  out.lags.assign(signals.size(), 0);
  out.aligned.resize(signals.size());
  for (std::size_t i = 0; i < signals.size(); ++i) {
    if (static_cast<NodeId>(i) == reference) {
      out.aligned[i] = signals[i];
      continue;
    }
    try {
      out.lags[i] = GccPhatLag(signals[reference], signals[i], max_lag);
    } catch (const Error &e) {
      throw Error(e.kind(), std::string(e.what()) + " [node " +
                                std::to_string(i) + "]");
    }
    out.aligned[i] = ShiftSignal(signals[i], -out.lags[i]);
  }
  return out;
}

}  // namespace dwpe
