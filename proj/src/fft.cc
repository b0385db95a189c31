// dwpe/fft.cc

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

#include "dwpe/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "dwpe/error.h"

namespace dwpe {

namespace {
// FFTW's planner is not thread safe.
std::mutex &PlannerMutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealFft::Impl {
  double *real = nullptr;
  fftw_complex *spec = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;

  ~Impl() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
    fftw_free(real);
    fftw_free(spec);
  }
};

RealFft::RealFft(std::size_t size) : size_(size), impl_(new Impl) {
  Require(size >= 2, ErrorKind::kInvalidInput, "fft size must be >= 2");
  std::lock_guard<std::mutex> lock(PlannerMutex());
  const int n = static_cast<int>(size);
  impl_->real = fftw_alloc_real(size);
  impl_->spec = fftw_alloc_complex(size / 2 + 1);
  impl_->forward = fftw_plan_dft_r2c_1d(n, impl_->real, impl_->spec,
                                        FFTW_ESTIMATE);
  impl_->inverse = fftw_plan_dft_c2r_1d(n, impl_->spec, impl_->real,
                                        FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  if (!impl_->forward || !impl_->inverse)
    Fail(ErrorKind::kNumerical, "fftw planning failed");
}

RealFft::~RealFft() = default;
RealFft::RealFft(RealFft &&) noexcept = default;
RealFft &RealFft::operator=(RealFft &&) noexcept = default;

void RealFft::Forward(std::span<const double> in, std::span<Complex> out) {
  if (in.size() > size_ || out.size() < bins())
    Fail(ErrorKind::kInvalidInput, "fft buffer size mismatch");
  std::copy(in.begin(), in.end(), impl_->real);
  std::fill(impl_->real + in.size(), impl_->real + size_, 0.0);
  fftw_execute(impl_->forward);
  const auto *spec = reinterpret_cast<const Complex *>(impl_->spec);
  std::copy(spec, spec + bins(), out.begin());
}

void RealFft::Inverse(std::span<const Complex> in, std::span<double> out) {
  if (in.size() < bins() || out.size() < size_)
    Fail(ErrorKind::kInvalidInput, "fft buffer size mismatch");
  std::memcpy(impl_->spec, in.data(), bins() * sizeof(Complex));
  fftw_execute(impl_->inverse);
  const double scale = 1.0 / static_cast<double>(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = impl_->real[i] * scale;
}

std::size_t NextPow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> FftConvolve(std::span<const double> a,
                                std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = std::max<std::size_t>(2, NextPow2(out_len));
  RealFft fft(n);
  std::vector<Complex> fa(fft.bins()), fb(fft.bins());
  fft.Forward(a, fa);
  fft.Forward(b, fb);
  for (std::size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  std::vector<double> full(n);
  fft.Inverse(fa, full);
  full.resize(out_len);
  return full;
}

}  // namespace dwpe
