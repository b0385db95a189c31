// dwpe/hermitian-solve.h

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

#ifndef DWPE_HERMITIAN_SOLVE_H_
#define DWPE_HERMITIAN_SOLVE_H_

#include <cstdint>

#include "dwpe/types.h"

namespace dwpe {

/// Complex scalar operation tally. A modulus-square counts as one
/// multiplication.
struct OpTally {
  std::int64_t mul = 0;
  std::int64_t add = 0;
  std::int64_t div = 0;
  std::int64_t sqrt = 0;

  std::int64_t total() const { return mul + add + div + sqrt; }
};

struct SolveInfo {
  /// (max pivot / min pivot)^2 of the Cholesky factor; a cheap lower bound
  /// on the 2-norm condition number of the regularized matrix.
  double condition_estimate = 1.0;
  /// ||(Z + ridge I) w - q|| / ||q|| after refinement (0 when q == 0).
  double relative_residual = 0.0;
};

/// scale * trace(Z) / dim; the default scale is 1e-8.
double DefaultRidge(const CMatrix &z, double scale = 1e-8);

/// Solves (Z + ridge I) w = q for Hermitian positive (semi)definite Z by
/// Cholesky factorization followed by up to two steps of iterative
/// refinement. Only the lower triangle of Z is read. Throws kSolver, with
/// the condition estimate in the message, when a pivot is not positive.
/// When `tally` is given it receives the operation count of the
/// factorization and the two triangular solves (refinement excluded).
CVector SolveWeights(const CMatrix &z, const CVector &q, double ridge,
                     SolveInfo *info = nullptr, OpTally *tally = nullptr);

}  // namespace dwpe

#endif  // DWPE_HERMITIAN_SOLVE_H_
