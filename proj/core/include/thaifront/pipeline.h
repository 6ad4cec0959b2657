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

// End-to-end text front end: pause prediction, segmentation, per-token G2P
// and token encoding, one input line at a time.

#ifndef THAIFRONT_PIPELINE_H_
#define THAIFRONT_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thaifront/audio_features.h"
#include "thaifront/corpus_io.h"
#include "thaifront/pause_prediction.h"
#include "thaifront/phoneme_tone_encoding.h"
#include "thaifront/phonology.h"
#include "thaifront/segmentation.h"

namespace thaifront {

struct PipelineConfig {
  std::string lexicon_path;
  std::string pause_model_path;  // empty: no pause prediction
  std::string exceptions_path;   // empty: rules only
  std::string rules_path;        // empty: built-in tone rules
  std::string vocab_path;
  std::string pause_tag{kDefaultPauseTag};
  std::optional<double> threshold;  // overrides the pause model's threshold
  MelConfig mel;
  PitchConfig pitch;
  std::uint64_t seed = 0;
};

struct ConfigIssue {
  std::string field;
  std::string message;
};

struct ConfigReport {
  std::vector<ConfigIssue> failures;
  std::vector<ConfigIssue> warnings;
  bool ok() const { return failures.empty(); }
};

// Checks that every referenced file exists and parses, and that the vocab
// covers the phonemes of the exception dictionary and the rules table. Never
// throws for bad configs; the problems are in the report.
ConfigReport ValidateConfig(const PipelineConfig& cfg);

enum class Stage { kPauses, kSegment, kG2p, kEncode };
std::string_view StageName(Stage stage);

// Pronunciations for a segmented sentence. Tokens made only of whitespace
// and punctuation are silent; every pause gap becomes a Pause item. Throws
// UnresolvableWordError for a token with no pronunciation.
Utterance PronounceTokens(const PausedSegmentation& seg, const G2p& g2p);

struct LineResult {
  PauseAnnotatedSentence pauses;
  PausedSegmentation segmentation;
  UtteranceLine utterance;
  EncodedSequence encoded;
  std::size_t unknown_phonemes = 0;
};

class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& message)
      : Error(std::string(StageName(stage)) + ": " + message), stage_(stage), detail_(message) {}
  Stage stage() const { return stage_; }
  // The message without the stage prefix.
  const std::string& detail() const { return detail_; }

 private:
  Stage stage_;
  std::string detail_;
};

class Pipeline {
 public:
  // Throws ValidationError listing every failure when the config is invalid.
  static Pipeline Load(const PipelineConfig& cfg);

  Pipeline(TrieIndex trie, std::optional<CountPauseModel> pause_model, G2p g2p,
           PhonemeVocab vocab);

  // Throws StageError naming the failing stage.
  LineResult ProcessLine(std::string_view line) const;

  const TrieIndex& trie() const { return trie_; }
  const G2p& g2p() const { return g2p_; }
  const PhonemeVocab& vocab() const { return vocab_; }
  const std::optional<CountPauseModel>& pause_model() const { return pause_model_; }

 private:
  TrieIndex trie_;
  std::optional<CountPauseModel> pause_model_;
  G2p g2p_;
  PhonemeVocab vocab_;
};

struct LineError {
  std::size_t line = 0;  // 1-based
  Stage stage = Stage::kPauses;
  std::string message;
};

struct PipelineRun {
  // One entry per input line, in input order; empty for failed lines.
  std::vector<std::optional<LineResult>> results;
  std::vector<LineError> errors;
};

// Processes lines on up to `threads` workers. Output order always matches
// input order. With `strict`, the first error (lowest line number) is
// rethrown as a StageError after all workers stop.
PipelineRun RunPipeline(const std::vector<std::string>& lines, const Pipeline& pipeline,
                        bool strict = false, int threads = 1);

// Stage renderings, one line per input line; failed lines render empty.
std::string RenderSegmentationLine(const PausedSegmentation& seg, std::string_view sep,
                                   std::string_view pause_tag);

}  // namespace thaifront

#endif  // THAIFRONT_PIPELINE_H_
