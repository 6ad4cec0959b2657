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

// Real-input FFT over FFTW. Plans are built under a global lock because the
// FFTW planner is not thread safe; execution is lock free.

#ifndef THAIFRONT_SRC_REAL_FFT_H_
#define THAIFRONT_SRC_REAL_FFT_H_

#include <complex>
#include <cstddef>
#include <vector>

#include <fftw3.h>

namespace thaifront {
namespace internal {

class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return size_; }
  std::size_t bins() const { return size_ / 2 + 1; }

  // `input` holds at most size() samples and is zero padded. Writes bins()
  // magnitudes.
  void Magnitude(const double* input, std::size_t count, double* magnitude);
  void Forward(const double* input, std::size_t count, std::complex<double>* spectrum);

 private:
  void Run(const double* input, std::size_t count);

  std::size_t size_;
  double* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

}  // namespace internal
}  // namespace thaifront

#endif  // THAIFRONT_SRC_REAL_FFT_H_
