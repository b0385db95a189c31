// dwpe/complexity.cc

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

#include "dwpe/complexity.h"

#include "dwpe/error.h"

namespace dwpe {

namespace {

void CheckSizes(int num_nodes, int filter_order) {
  Require(num_nodes >= 1, ErrorKind::kInvalidInput, "need at least one node");
  Require(filter_order >= 1, ErrorKind::kInvalidInput,
          "filter order must be >= 1");
}

double Ratio(std::int64_t a, std::int64_t b) {
  return static_cast<double>(a) / static_cast<double>(b);
}

}  // namespace

std::int64_t SolveDimension(Mode mode, int num_nodes, int filter_order) {
  CheckSizes(num_nodes, filter_order);
  switch (mode) {
    case Mode::kSingle: return filter_order;
    case Mode::kCentralized:
      return static_cast<std::int64_t>(num_nodes) * filter_order;
    case Mode::kDistributed: return filter_order + num_nodes - 1;
  }
  Fail(ErrorKind::kInvalidInput, "unknown mode");
}

OpCount CountAccumulationOps(Mode mode, int num_nodes, int filter_order,
                             int frames) {
  Require(frames >= 1, ErrorKind::kInvalidInput, "need at least one frame");
  OpCount c;
  c.dimension = SolveDimension(mode, num_nodes, filter_order);
  const std::int64_t d = c.dimension;
  c.multiplications = frames * (d * d + d);
  c.divisions = frames * (d + 1);
  return c;
}

OpCount CountSolveOps(Mode mode, int num_nodes, int filter_order) {
  OpCount c;
  c.dimension = SolveDimension(mode, num_nodes, filter_order);
  const std::int64_t d = c.dimension;
  c.solve_cost = (2 * d * d * d + 15 * d * d + d) / 6;
  return c;
}

std::int64_t CubicSolveCost(std::int64_t d) { return d * d * d; }

BetaReport ComputeBetaReport(int num_nodes, int filter_order, int frames) {
  Require(num_nodes >= 2, ErrorKind::kInvalidInput,
          "reduction factors need at least two nodes");
  CheckSizes(num_nodes, filter_order);
  BetaReport r;
  r.num_nodes = num_nodes;
  r.filter_order = filter_order;

  const double node_dim = filter_order + num_nodes;
  const double fusion_dim = static_cast<double>(num_nodes) * filter_order;
  const double ratio = node_dim / fusion_dim;
  r.beta_mul = ratio * ratio;
  r.beta_div = ratio;
  r.beta_solve = ratio * ratio * ratio;
  r.beta_mul_network = num_nodes * r.beta_mul;
  r.beta_div_network = num_nodes * r.beta_div;

  const auto dist_acc = CountAccumulationOps(Mode::kDistributed, num_nodes,
                                             filter_order, frames);
  const auto cent_acc = CountAccumulationOps(Mode::kCentralized, num_nodes,
                                             filter_order, frames);
  const auto dist_solve =
      CountSolveOps(Mode::kDistributed, num_nodes, filter_order);
  const auto cent_solve =
      CountSolveOps(Mode::kCentralized, num_nodes, filter_order);
  r.exact_mul = Ratio(dist_acc.multiplications, cent_acc.multiplications);
  r.exact_div = Ratio(dist_acc.divisions, cent_acc.divisions);
  r.exact_solve = Ratio(dist_solve.solve_cost, cent_solve.solve_cost);
  r.cubic_solve = Ratio(CubicSolveCost(dist_solve.dimension),
                        CubicSolveCost(cent_solve.dimension));
  return r;
}

double TransmissionReduction(int num_nodes, int filter_order) {
  Require(num_nodes >= 2, ErrorKind::kInvalidInput,
          "reduction needs at least two nodes");
  return 1.0 -
         Ratio(CountTransmissions(Mode::kDistributed, num_nodes, filter_order),
               CountTransmissions(Mode::kCentralized, num_nodes, filter_order));
}

}  // namespace dwpe
