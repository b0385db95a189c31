// dwpe/netsim.h

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

#ifndef DWPE_NETSIM_H_
#define DWPE_NETSIM_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dwpe/types.h"

namespace dwpe {

enum class Mode { kSingle, kCentralized, kDistributed };

const char *ModeName(Mode mode);
/// Accepts "single", "centralized", "distributed"; kInvalidInput otherwise.
Mode ParseMode(std::string_view name);

/// Complex scalars that must reach a node to compute the late reverberation
/// of one frame in one bin: (M-1) L raw delayed samples for centralized
/// processing, one compressed scalar per neighbour for distributed, none for
/// single-channel.
std::int64_t CountTransmissions(Mode mode, int num_nodes, int filter_order);

inline constexpr NodeId kBroadcast = -1;

/// One transmission in a round. The payload is shared between receivers.
struct Message {
  NodeId from = 0;
  NodeId to = kBroadcast;
  int round = 0;
  std::shared_ptr<const CMatrix> payload;  // frames x bins
  /// Ledger units per payload scalar. Raw frames shipped to a fusion node
  /// feed L delayed vectors each, so centralized messages count L.
  int units_per_scalar = 1;

  std::int64_t payload_size() const {
    return payload ? static_cast<std::int64_t>(payload->size()) : 0;
  }
};

struct LedgerEntry {
  int round;
  Mode mode;
  NodeId from;
  NodeId to;
  std::int64_t units;
};

class TransmissionLedger {
 public:
  void Record(const LedgerEntry &e) { entries_.push_back(e); }
  const std::vector<LedgerEntry> &entries() const { return entries_; }

  std::int64_t Total() const;
  std::int64_t TotalFor(Mode mode) const;
  std::int64_t ReceivedBy(NodeId node) const;
  /// Rounds in which at least one transmission was recorded.
  std::vector<int> ActiveRounds() const;

  /// round,mode,from,to,units
  void WriteCsv(std::ostream &os, const std::string &prefix_header = "",
                const std::string &prefix = "") const;

 private:
  std::vector<LedgerEntry> entries_;
};

/// Synchronous, lossless, fully connected network. Senders may Submit
/// concurrently; DeliverRound is the barrier and runs on one thread.
class Network {
 public:
  Network(int num_nodes, Mode mode);

  int num_nodes() const { return num_nodes_; }

  /// Throws kProtocol on a second submission by the same sender in a round,
  /// on a round older than the sender's previous one, or on bad ids.
  void Submit(Message msg);

  /// Delivers every message submitted for `round`. Broadcasts reach the
  /// other M-1 nodes exactly once; each inbox is ordered by sender id.
  std::vector<std::vector<Message>> DeliverRound(int round);

  const TransmissionLedger &ledger() const { return ledger_; }

 private:
  int num_nodes_;
  Mode mode_;
  std::mutex mu_;
  std::vector<Message> pending_;
  std::vector<int> last_round_;
  TransmissionLedger ledger_;
};

/// Segment length for GCC-PHAT averaging (at least 4 max_lag).
inline constexpr std::size_t kGccSegment = 4096;

/// Lag maximizing the PHAT-weighted cross-correlation over
/// [-max_lag, max_lag]. Positive when `b` lags `a`, i.e. b(t) ~ a(t - lag).
/// Signals longer than one segment use the mean of the phase-normalized
/// cross-spectra of half-overlapping Hann segments; shorter ones use a
/// single whole-signal transform. Throws kUndefinedLag when either signal is
/// all zero.
int GccPhatLag(std::span<const double> a, std::span<const double> b,
               int max_lag);

struct SyncResult {
  std::vector<std::vector<double>> aligned;
  std::vector<int> lags;  // lag of each signal relative to the reference
};

/// Advances each signal by its GCC-PHAT lag against `reference`,
/// zero-filling the displaced edge.
SyncResult Synchronize(const std::vector<std::vector<double>> &signals,
                       NodeId reference, int max_lag);

/// Moves a signal by `lag` samples (positive delays it), zero filled.
std::vector<double> ShiftSignal(std::span<const double> x, int lag);

}  // namespace dwpe

#endif  // DWPE_NETSIM_H_
