// dwpe/common.cc

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

#include <algorithm>
#include <atomic>
#include <thread>

#include "dwpe/error.h"
#include "dwpe/types.h"

namespace dwpe {

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kConfig: return "configuration";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kNumerical: return "numerical";
    case ErrorKind::kSolver: return "solver";
    case ErrorKind::kProtocol: return "protocol";
    case ErrorKind::kMissingData: return "missing-data";
    case ErrorKind::kUndefinedMetric: return "undefined-metric";
    case ErrorKind::kUndefinedLag: return "undefined-lag";
  }
  return "unknown";
}

void ParallelFor(std::size_t begin, std::size_t end,
                 const std::function<void(std::size_t)> &fn,
                 unsigned threads) {
  if (end <= begin) return;
  const std::size_t count = end - begin;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));

  std::vector<std::exception_ptr> errors(count);
  if (threads <= 1) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i - begin] = std::current_exception();
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{begin};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < end; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i - begin] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace dwpe
