// dwpe/danse.h

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

#ifndef DWPE_DANSE_H_
#define DWPE_DANSE_H_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dwpe/metrics.h"
#include "dwpe/netsim.h"
#include "dwpe/stft.h"
#include "dwpe/wpe.h"

namespace dwpe {

// Distributed WPE with DANSE_1-style cooperation.
//
// Node i predicts its own channel from its L local delayed taps and one
// compressed scalar per neighbour,
//
//   D_i(n) = S_i(n) - [w_i; v_i]^H [s_i(n - tau); b_i(n)],
//   b_i(n)_j = g_j^H s_j(n - tau),
//
// where the compressor g_j is a copy of node j's local weights w_j taken
// every `collab_period` rounds. Each node solves an (L + M - 1)-dimensional
// weighted least-squares problem instead of the M L-dimensional centralized
// one.

/// Compressed streams received from neighbours, keyed by sender id. Each
/// matrix is frames x bins.
using Inbox = std::map<NodeId, std::shared_ptr<const CMatrix>>;

struct NodeState {
  NodeId node_id = 0;
  int num_nodes = 1;
  Spectrogram local_spec;  // S_i
  CMatrix local_weights;   // L x bins, w_i
  CMatrix cross_weights;   // (M-1) x bins, v_i, ordered by neighbour id
  CMatrix compressor;      // L x bins, g_i
  PsdEstimate psd;         // sigma_i
  CMatrix desired;         // frames x bins, D_i
  Inbox inbox;
  /// Round of the last compressor broadcast from this node (0 = never).
  int last_broadcast_round = 0;

  /// Zero weights and compressor; desired starts at the observation.
  static NodeState Create(NodeId id, int num_nodes, Spectrogram local,
                          const WpeParams &params);

  /// Neighbour ids in ascending order.
  std::vector<NodeId> Neighbors() const;
  /// True once a full set of neighbour streams has been received.
  bool HasCrossData() const { return !inbox.empty(); }
};

/// g^H s.
Complex CompressFrame(const CVector &delayed, const CVector &compressor);

/// c(n, k) = g(k)^H s_i(n - tau, k) for all frames and bins: the payload a
/// node broadcasts.
CMatrix CompressLocalData(const NodeState &node, const WpeParams &params);

/// [local; inbox_j(n, k) for each neighbour j in ascending id order].
/// Throws kMissingData naming the first absent neighbour.
CVector AssembleExtended(const CVector &local, const NodeState &node, int n,
                         int k);

/// All extended observations of bin k as rows: [DelayedMatrix | B].
CMatrix ExtendedMatrix(const NodeState &node, int k, const WpeParams &params);

/// D_i(n, k) under the node's current weights and inbox. Before any
/// neighbour data has arrived only the local block contributes.
Complex LocalPredict(const NodeState &node, int n, int k,
                     const WpeParams &params);

/// Weighted least-squares update of (w_i, v_i) for every bin from the
/// current psd and inbox, then recomputes node.desired. Until cross data
/// exists the solve is L-dimensional and v_i stays zero, because the cross
/// block of Z would be identically zero.
void LocalSolve(NodeState &node, const WpeParams &params);

/// compressor := local_weights.
void UpdateCompressor(NodeState &node);

/// One round of the per-node loop: PSD update, local solve, desired update,
/// and on rounds divisible by `collab_period` a compressor update plus the
/// broadcast of the compressed local data. Rounds are 1-based.
std::optional<Message> NodeRound(NodeState &node, const WpeParams &params,
                                 int round, int collab_period);

struct DistributedResult {
  std::vector<NodeState> nodes;
  ConvergenceTrace trace;
  TransmissionLedger ledger;
  int rounds = 0;
  bool converged = false;
};

/// Runs the network until every node's relative change drops below
/// params.convergence_tol or params.max_iters rounds have executed. Nodes
/// compute concurrently within a round; delivery is a barrier.
DistributedResult RunDistributedWpe(std::span<const Spectrogram> observations,
                                    const WpeParams &params,
                                    int collab_period);

}  // namespace dwpe

#endif  // DWPE_DANSE_H_
