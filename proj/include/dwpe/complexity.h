// dwpe/complexity.h

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

#ifndef DWPE_COMPLEXITY_H_
#define DWPE_COMPLEXITY_H_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dwpe/netsim.h"

namespace dwpe {

// Operation counting for one frequency bin.
//
// Counting conventions (complex scalar operations):
//  * accumulation of Z and q over N frames at solve dimension d, as done by
//    AccumulateNormalEquations: each frame divides the d-vector x_n and the
//    target by sigma_n (d + 1 divisions), then forms the outer product
//    u_n x_n^H (d^2 multiplications) and x_n v_n (d multiplications);
//  * the solve is a Cholesky factorization plus two triangular solves, as
//    done by SolveWeights: (2 d^3 + 15 d^2 + d) / 6 operations counting
//    multiplications, additions, divisions and square roots.
//
// The solve dimension d is M L for centralized processing and L + M - 1 per
// node for distributed processing.

struct OpCount {
  std::int64_t dimension = 0;
  std::int64_t multiplications = 0;
  std::int64_t divisions = 0;
  std::int64_t solve_cost = 0;
};

/// Solve dimension: M L (centralized), L + M - 1 (distributed), L (single).
std::int64_t SolveDimension(Mode mode, int num_nodes, int filter_order);

OpCount CountAccumulationOps(Mode mode, int num_nodes, int filter_order,
                             int frames);

OpCount CountSolveOps(Mode mode, int num_nodes, int filter_order);

/// Leading-order cost of a d-dimensional Hermitian solve: d^3.
std::int64_t CubicSolveCost(std::int64_t d);

/// Distributed-to-centralized reduction factors.
///
/// The headline factors use a slot-count accounting, in which a node's
/// effective dimension is L + M (its L taps plus one compressed slot for each
/// of the M nodes, its own included) against M L for the fusion node, and
/// per-frame costs of D^2 multiplications, D divisions and D^3 for the
/// solve. The `exact_*` factors divide this library's own operation counts
/// at the true solve dimensions L + M - 1 and M L.
struct BetaReport {
  int num_nodes = 0;
  int filter_order = 0;
  double beta_mul = 0.0;
  double beta_div = 0.0;
  double beta_solve = 0.0;
  /// M times the per-node factor: the whole network against one fusion node.
  double beta_mul_network = 0.0;
  double beta_div_network = 0.0;
  double exact_mul = 0.0;
  double exact_div = 0.0;
  double exact_solve = 0.0;
  /// ((L + M - 1) / (M L))^3, the cubic-model ratio at the solve dimension.
  double cubic_solve = 0.0;
};

/// Throws kInvalidInput for M < 2.
BetaReport ComputeBetaReport(int num_nodes, int filter_order, int frames);

/// 1 - T_distributed / T_centralized.
double TransmissionReduction(int num_nodes, int filter_order);

}  // namespace dwpe

#endif  // DWPE_COMPLEXITY_H_
