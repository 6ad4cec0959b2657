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

#include "thaifront/evaluation.h"

#include <algorithm>
#include <cmath>

#include "thaifront/error.h"
#include "thaifront/unicode.h"

namespace thaifront {

EditOps AlignEdits(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d[i][j] = std::min({diag, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  EditOps ops;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (d[i][j] == d[i - 1][j - 1] + (same ? 0 : 1)) {
        if (!same) ++ops.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ++ops.deletions;
      --i;
    } else {
      ++ops.insertions;
      --j;
    }
  }
  return ops;
}

namespace {

ErrorRate Rate(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  if (ref.empty()) throw ValidationError("reference is empty");
  ErrorRate r;
  r.ops = AlignEdits(ref, hyp);
  r.ref_length = ref.size();
  r.rate = static_cast<double>(r.ops.Distance()) / static_cast<double>(ref.size());
  return r;
}

}  // namespace

ErrorRate Wer(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  return Rate(ref, hyp);
}

ErrorRate Cer(std::string_view ref, std::string_view hyp) {
  return Rate(GraphemeClusters(ref), GraphemeClusters(hyp));
}

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> words;
  std::u32string current;
  for (char32_t ch : DecodeUtf8(text)) {
    if (IsWhitespace(ch)) {
      if (!current.empty()) words.push_back(EncodeUtf8(current));
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!current.empty()) words.push_back(EncodeUtf8(current));
  return words;
}

double CosineSim(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ValidationError("vectors differ in length");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw ValidationError("cosine similarity of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

PrfScore SegmentationF1(const Segmentation& gold, const Segmentation& pred) {
  if (gold.Join("") != pred.Join("")) {
    throw ValidationError("segmentations cover different text");
  }
  return SetPrf(TokenBoundaries(gold), TokenBoundaries(pred));
}

}  // namespace thaifront
