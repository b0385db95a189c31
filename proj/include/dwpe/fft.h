// dwpe/fft.h

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

#ifndef DWPE_FFT_H_
#define DWPE_FFT_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "dwpe/types.h"

namespace dwpe {

/// Real-to-half-complex transform pair of a fixed length, backed by FFTW
/// with estimate-mode plans (deterministic across runs). An instance owns its
/// work buffers and must not be shared between threads; create one per
/// worker. The inverse is normalized so Inverse(Forward(x)) == x.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;
  RealFft(RealFft &&) noexcept;
  RealFft &operator=(RealFft &&) noexcept;

  std::size_t size() const { return size_; }
  std::size_t bins() const { return size_ / 2 + 1; }

  /// `in` may be shorter than size(); the remainder is zero-filled.
  void Forward(std::span<const double> in, std::span<Complex> out);
  void Inverse(std::span<const Complex> in, std::span<double> out);

 private:
  struct Impl;
  std::size_t size_;
  std::unique_ptr<Impl> impl_;
};

/// Smallest power of two >= n.
std::size_t NextPow2(std::size_t n);

/// Full linear convolution (length a.size() + b.size() - 1) via FFT.
std::vector<double> FftConvolve(std::span<const double> a,
                                std::span<const double> b);

}  // namespace dwpe

#endif  // DWPE_FFT_H_
