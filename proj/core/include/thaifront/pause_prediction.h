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

// Prosodic pause prediction for unpunctuated text.
//
// A PauseScorer assigns a pause probability to every gap between adjacent
// tokens of a segmented sentence. CountPauseModel is the trainable baseline:
// smoothed pause rates per token-window signature with back-off from the
// full window down to single neighbours, then to the corpus prior.

#ifndef THAIFRONT_PAUSE_PREDICTION_H_
#define THAIFRONT_PAUSE_PREDICTION_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "thaifront/corpus_io.h"
#include "thaifront/prf.h"
#include "thaifront/segmentation.h"

namespace thaifront {

class PauseScorer {
 public:
  virtual ~PauseScorer() = default;

  // Probability of a pause before tokens[gap], 0 < gap < tokens.size().
  virtual double ScoreGap(const Segmentation& tokens, std::size_t gap) const = 0;
  virtual double threshold() const = 0;
};

inline constexpr std::string_view kOovSymbol = "<OOV>";
inline constexpr std::string_view kSentenceStart = "<BOS>";
inline constexpr std::string_view kSentenceEnd = "<EOS>";
inline constexpr int kPauseModelVersion = 1;

class CountPauseModel : public PauseScorer {
 public:
  CountPauseModel() = default;
  CountPauseModel(int window, double threshold, double prior,
                  std::map<std::string, double> boundary_scores);

  double ScoreGap(const Segmentation& tokens, std::size_t gap) const override;
  double threshold() const override { return threshold_; }

  // Back-off keys for a gap, most specific first.
  std::vector<std::string> Signatures(const Segmentation& tokens, std::size_t gap) const;
  // Stored probability for a signature key, or the prior when unseen.
  double SignatureScore(const std::string& key) const;

  int window() const { return window_; }
  double prior() const { return prior_; }
  const std::map<std::string, double>& boundary_scores() const { return scores_; }

  CountPauseModel WithThreshold(double threshold) const;

  std::string Serialize() const;
  static CountPauseModel Parse(std::string_view text);
  static CountPauseModel Load(const std::string& path);
  void Save(const std::string& path) const;

 private:
  int window_ = 2;
  double threshold_ = 0.5;
  double prior_ = 0.0;
  std::map<std::string, double> scores_;
};

// Signature key with `left` tokens before and `right` tokens after the gap.
std::string SignatureKey(const Segmentation& tokens, std::size_t gap, int left, int right);

struct PausedSegmentation {
  Segmentation tokens;
  // Token indices g such that a pause precedes tokens[g], increasing.
  std::vector<std::size_t> pause_gaps;
};

// Segments each stretch between pauses on its own, so every pause falls on
// a token gap.
PausedSegmentation SegmentAroundPauses(const PauseAnnotatedSentence& sentence,
                                       const TrieIndex& trie,
                                       SegmentMode mode = SegmentMode::kLongestMatch);

// Sentences are segmented chunk by chunk between annotated pauses, so every
// pause falls on a token gap. Throws ValidationError on an empty corpus or a
// window below 1.
CountPauseModel TrainPauseModel(const std::vector<PauseAnnotatedSentence>& corpus,
                                const TrieIndex& trie, int window = 2,
                                double threshold = 0.5);

// Segments `text` and inserts a pause at every interior gap scoring at least
// the threshold.
PauseAnnotatedSentence PredictPauses(std::string_view text, const PauseScorer& model,
                                     const TrieIndex& trie);

// Throws ValidationError if the raw texts differ.
PrfScore PauseGapF1(const PauseAnnotatedSentence& gold, const PauseAnnotatedSentence& pred);

}  // namespace thaifront

#endif  // THAIFRONT_PAUSE_PREDICTION_H_
