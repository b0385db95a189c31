// dwpe/danse.cc

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

#include "dwpe/danse.h"

#include <string>

#include "dwpe/error.h"

namespace dwpe {

NodeState NodeState::Create(NodeId id, int num_nodes, Spectrogram local,
                            const WpeParams &params) {
  Require(num_nodes >= 1 && id >= 0 && id < num_nodes,
          ErrorKind::kInvalidInput, "node id out of range");
  NodeState s;
  s.node_id = id;
  s.num_nodes = num_nodes;
  const int bins = local.bins();
  s.local_weights = CMatrix::Zero(params.filter_order, bins);
  s.cross_weights = CMatrix::Zero(num_nodes - 1, bins);
  s.compressor = CMatrix::Zero(params.filter_order, bins);
  s.desired = local.data;
  s.local_spec = std::move(local);
  return s;
}

std::vector<NodeId> NodeState::Neighbors() const {
  std::vector<NodeId> out;
  for (NodeId j = 0; j < num_nodes; ++j)
    if (j != node_id) out.push_back(j);
  return out;
}

Complex CompressFrame(const CVector &delayed, const CVector &compressor) {
  if (delayed.size() != compressor.size())
    Fail(ErrorKind::kInvalidInput,
         "compressor length " + std::to_string(compressor.size()) +
             " does not match delayed vector length " +
             std::to_string(delayed.size()));
  return compressor.dot(delayed);
}

CMatrix CompressLocalData(const NodeState &node, const WpeParams &params) {
  const int bins = node.local_spec.bins();
  CMatrix out(node.local_spec.frames(), bins);
  for (int k = 0; k < bins; ++k)
    out.col(k) = DelayedMatrix(node.local_spec, k, params) *
                 node.compressor.col(k).conjugate();
  return out;
}

namespace {

const CMatrix &NeighborStream(const NodeState &node, NodeId j) {
  auto it = node.inbox.find(j);
  if (it == node.inbox.end() || !it->second)
    Fail(ErrorKind::kMissingData,
         "node " + std::to_string(node.node_id) +
             " has no compressed data from neighbour " + std::to_string(j));
  return *it->second;
}

}  // namespace

CVector AssembleExtended(const CVector &local, const NodeState &node, int n,
                         int k) {
  const auto neighbors = node.Neighbors();
  CVector out(local.size() + static_cast<Eigen::Index>(neighbors.size()));
  out.head(local.size()) = local;
  for (std::size_t j = 0; j < neighbors.size(); ++j)
    out(local.size() + j) = NeighborStream(node, neighbors[j])(n, k);
  return out;
}

CMatrix ExtendedMatrix(const NodeState &node, int k, const WpeParams &params) {
  const auto neighbors = node.Neighbors();
  const int l = params.filter_order;
  CMatrix x(node.local_spec.frames(),
            l + static_cast<Eigen::Index>(neighbors.size()));
  x.leftCols(l) = DelayedMatrix(node.local_spec, k, params);
  for (std::size_t j = 0; j < neighbors.size(); ++j)
    x.col(l + j) = NeighborStream(node, neighbors[j]).col(k);
  return x;
}

Complex LocalPredict(const NodeState &node, int n, int k,
                     const WpeParams &params) {
  CVector local = BuildDelayedVector(node.local_spec, n, k, params);
  const Complex ref = node.local_spec.data(n, k);
  if (!node.HasCrossData())
    return PredictDesired(ref, local, node.local_weights.col(k));
  CVector weights(node.local_weights.rows() + node.cross_weights.rows());
  weights << node.local_weights.col(k), node.cross_weights.col(k);
  return PredictDesired(ref, AssembleExtended(local, node, n, k), weights);
}

void LocalSolve(NodeState &node, const WpeParams &params) {
  const int bins = node.local_spec.bins();
  const int l = params.filter_order;
  const bool cross = node.HasCrossData();
  for (int k = 0; k < bins; ++k) {
    try {
      const CMatrix x = cross ? ExtendedMatrix(node, k, params)
                              : DelayedMatrix(node.local_spec, k, params);
      const CVector target = node.local_spec.data.col(k);
      CVector w = SolveBin(x, target, node.psd.sigma.col(k), params.ridge_scale);
      node.desired.col(k) = PredictBin(target, x, w);
      node.local_weights.col(k) = w.head(l);
      if (cross)
        node.cross_weights.col(k) = w.tail(w.size() - l);
      else
        node.cross_weights.col(k).setZero();
    } catch (const Error &e) {
      throw Error(e.kind(), std::string(e.what()) + " [node " +
                                std::to_string(node.node_id) + ", bin " +
                                std::to_string(k) + "]");
    }
  }
}

void UpdateCompressor(NodeState &node) { node.compressor = node.local_weights; }

std::optional<Message> NodeRound(NodeState &node, const WpeParams &params,
                                 int round, int collab_period) {
  Require(collab_period >= 1, ErrorKind::kConfig,
          "collaboration period must be >= 1");
  Require(round >= 1, ErrorKind::kInvalidInput, "rounds are 1-based");
  node.psd = UpdatePsd(node.desired, params.psd_floor);
  LocalSolve(node, params);
  if (round % collab_period != 0) return std::nullopt;

  UpdateCompressor(node);
  node.last_broadcast_round = round;
  Message msg;
  msg.from = node.node_id;
  msg.to = kBroadcast;
  msg.round = round;
  msg.payload = std::make_shared<const CMatrix>(CompressLocalData(node, params));
  return msg;
}

DistributedResult RunDistributedWpe(std::span<const Spectrogram> observations,
                                    const WpeParams &params,
                                    int collab_period) {
  params.Validate();
  Require(collab_period >= 1, ErrorKind::kConfig,
          "collaboration period must be >= 1");
  Require(!observations.empty(), ErrorKind::kInvalidInput, "no nodes");
  const int m = static_cast<int>(observations.size());
  for (const auto &o : observations)
    Require(o.frames() == observations.front().frames() &&
                o.bins() == observations.front().bins(),
            ErrorKind::kInvalidInput, "node spectrograms differ in shape");

  DistributedResult result;
  for (int i = 0; i < m; ++i)
    result.nodes.push_back(NodeState::Create(i, m, observations[i], params));
  for (int i = 0; i < m; ++i) result.trace.nodes.push_back(i);

  Network net(m, Mode::kDistributed);
  for (int round = 1; round <= params.max_iters; ++round) {
    std::vector<CMatrix> before(m);
    for (int i = 0; i < m; ++i) before[i] = result.nodes[i].desired;

    ParallelFor(
        0, m,
        [&](std::size_t i) {
          auto msg = NodeRound(result.nodes[i], params, round, collab_period);
          if (msg) net.Submit(std::move(*msg));
        },
        params.threads);

    auto inboxes = net.DeliverRound(round);
    for (int i = 0; i < m; ++i) {
      if (inboxes[i].empty()) continue;
      Inbox fresh;
      for (auto &msg : inboxes[i]) fresh[msg.from] = msg.payload;
      result.nodes[i].inbox = std::move(fresh);
    }

    std::vector<double> change(m);
    bool all_below = true;
    for (int i = 0; i < m; ++i) {
      const CMatrix &cur = result.nodes[i].desired;
      change[i] = before[i].squaredNorm() == 0.0
                      ? (cur.squaredNorm() == 0.0 ? 0.0 : 1.0)
                      : ConvergenceError(cur, before[i]);
      all_below = all_below && change[i] < params.convergence_tol;
    }
    result.trace.Append(round, std::move(change));
    result.rounds = round;
    if (all_below) {
      result.converged = true;
      break;
    }
  }
  result.ledger = net.ledger();
  return result;
}

}  // namespace dwpe
