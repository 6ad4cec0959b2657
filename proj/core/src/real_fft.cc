// Copyright (c) 2026 The thaifront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "real_fft.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <new>

namespace thaifront {
namespace internal {

namespace {

std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

RealFft::RealFft(std::size_t size) : size_(size) {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  in_ = fftw_alloc_real(size_);
  out_ = fftw_alloc_complex(bins());
  if (!in_ || !out_) throw std::bad_alloc();
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(size_), in_, out_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(plan_);
  fftw_free(in_);
  fftw_free(out_);
}

void RealFft::Run(const double* input, std::size_t count) {
  count = std::min(count, size_);
  std::copy(input, input + count, in_);
  std::fill(in_ + count, in_ + size_, 0.0);
  fftw_execute(plan_);
}

void RealFft::Magnitude(const double* input, std::size_t count, double* magnitude) {
  Run(input, count);
  for (std::size_t k = 0; k < bins(); ++k) magnitude[k] = std::hypot(out_[k][0], out_[k][1]);
}

void RealFft::Forward(const double* input, std::size_t count, std::complex<double>* spectrum) {
  Run(input, count);
  for (std::size_t k = 0; k < bins(); ++k) spectrum[k] = {out_[k][0], out_[k][1]};
}

}  // namespace internal
}  // namespace thaifront
