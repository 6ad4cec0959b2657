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

// Objective metrics: word and character error rate, STOI, cosine
// similarity and segmentation boundary F1.

#ifndef THAIFRONT_EVALUATION_H_
#define THAIFRONT_EVALUATION_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "thaifront/audio_features.h"
#include "thaifront/prf.h"
#include "thaifront/segmentation.h"

namespace thaifront {

struct EditOps {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;

  std::size_t Distance() const { return substitutions + insertions + deletions; }
  bool operator==(const EditOps&) const = default;
};

// Minimum edit alignment. When several alignments tie, the backtrace takes a
// substitution over a deletion over an insertion at each step.
EditOps AlignEdits(const std::vector<std::string>& ref, const std::vector<std::string>& hyp);

struct ErrorRate {
  double rate = 0.0;
  EditOps ops;
  std::size_t ref_length = 0;
};

// Throws ValidationError on an empty reference.
ErrorRate Wer(const std::vector<std::string>& ref, const std::vector<std::string>& hyp);
// Over extended grapheme clusters.
ErrorRate Cer(std::string_view ref, std::string_view hyp);

// Splits on Unicode whitespace.
std::vector<std::string> SplitWords(std::string_view text);

// Throws ValidationError on a length mismatch or a zero vector.
double CosineSim(const std::vector<double>& a, const std::vector<double>& b);

// Boundary precision/recall/F1. Throws ValidationError if the two
// segmentations cover different text.
PrfScore SegmentationF1(const Segmentation& gold, const Segmentation& pred);

struct StoiConfig {
  int sample_rate = 10000;
  int frame_length = 256;  // 25.6 ms
  int fft_size = 512;
  int hop = 128;           // 50% overlap
  int num_bands = 15;
  double min_freq = 150.0;
  int segment_frames = 30;  // 384 ms
  double beta_db = -15.0;
  double dynamic_range_db = 40.0;
};

void ValidateStoiConfig(const StoiConfig& cfg);

// Short-time objective intelligibility of `processed` against `clean`. Both
// are resampled to cfg.sample_rate. Throws ValidationError on mismatched
// lengths or rates, a rate below cfg.sample_rate, or too little non-silent
// audio for one analysis segment.
double Stoi(const Waveform& clean, const Waveform& processed, const StoiConfig& cfg = {});

// Windowed-sinc rate conversion; exposed for testing.
std::vector<double> Resample(const std::vector<double>& x, int from_rate, int to_rate);

}  // namespace thaifront

#endif  // THAIFRONT_EVALUATION_H_
