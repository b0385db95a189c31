// dwpe/types.h

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

#ifndef DWPE_TYPES_H_
#define DWPE_TYPES_H_

#include <complex>
#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace dwpe {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Node identifiers are dense indices 0..M-1.
using NodeId = int;

/// Runs fn(i) for i in [begin, end) on up to `threads` workers (0 picks the
/// hardware concurrency). Each index must write disjoint state. If any call
/// throws, the exception from the lowest failing index is rethrown so the
/// reported error does not depend on scheduling.
void ParallelFor(std::size_t begin, std::size_t end,
                 const std::function<void(std::size_t)> &fn,
                 unsigned threads = 0);

}  // namespace dwpe

#endif  // DWPE_TYPES_H_
