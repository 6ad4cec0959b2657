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

#ifndef THAIFRONT_PRF_H_
#define THAIFRONT_PRF_H_

#include <cstddef>
#include <vector>

namespace thaifront {

struct PrfScore {
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
};

// Set precision/recall/F1 of `predicted` against `gold` (both sorted, no
// duplicates). An empty predicted set has precision 1 and an empty gold set
// has recall 1; F1 is 0 when both precision and recall are 0.
inline PrfScore SetPrf(const std::vector<std::size_t>& gold,
                       const std::vector<std::size_t>& predicted) {
  std::size_t hits = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < gold.size() && j < predicted.size()) {
    if (gold[i] == predicted[j]) {
      ++hits;
      ++i;
      ++j;
    } else if (gold[i] < predicted[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  PrfScore s;
  s.precision = predicted.empty() ? 1.0 : static_cast<double>(hits) / predicted.size();
  s.recall = gold.empty() ? 1.0 : static_cast<double>(hits) / gold.size();
  const double denom = s.precision + s.recall;
  s.f1 = denom == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / denom;
  return s;
}

}  // namespace thaifront

#endif  // THAIFRONT_PRF_H_
