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

#include "thaifront/pause_prediction.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "thaifront/error.h"
#include "thaifront/unicode.h"

namespace thaifront {

namespace {

std::string_view TokenSymbol(const Segmentation& tokens, std::ptrdiff_t i) {
  if (i < 0) return kSentenceStart;
  if (static_cast<std::size_t>(i) >= tokens.tokens.size()) return kSentenceEnd;
  if (tokens.oov_flags[i]) return kOovSymbol;
  return tokens.tokens[i];
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double ParseDouble(std::string_view text, std::size_t line_number) {
  double v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError("bad number '" + std::string(text) + "'", line_number);
  }
  return v;
}

void CheckProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

std::string SignatureKey(const Segmentation& tokens, std::size_t gap, int left, int right) {
  std::string key = "L" + std::to_string(left) + "R" + std::to_string(right) + ":";
  const auto g = static_cast<std::ptrdiff_t>(gap);
  for (int i = left; i >= 1; --i) {
    key += TokenSymbol(tokens, g - i);
    if (i > 1) key += ' ';
  }
  key += '|';
  for (int i = 0; i < right; ++i) {
    if (i > 0) key += ' ';
    key += TokenSymbol(tokens, g + i);
  }
  return key;
}

CountPauseModel::CountPauseModel(int window, double threshold, double prior,
                                 std::map<std::string, double> boundary_scores)
    : window_(window), threshold_(threshold), prior_(prior), scores_(std::move(boundary_scores)) {
  if (window_ < 1) throw ValidationError("pause window must be at least 1");
  if (!(threshold_ >= 0.0 && std::isfinite(threshold_))) {
    throw ValidationError("pause threshold must be a non-negative number");
  }
  CheckProbability(prior_, "pause prior");
  for (const auto& [key, p] : scores_) CheckProbability(p, "pause score");
}

std::vector<std::string> CountPauseModel::Signatures(const Segmentation& tokens,
                                                     std::size_t gap) const {
  std::vector<std::string> keys;
  for (int k = window_; k >= 1; --k) keys.push_back(SignatureKey(tokens, gap, k, k));
  keys.push_back(SignatureKey(tokens, gap, 1, 0));
  keys.push_back(SignatureKey(tokens, gap, 0, 1));
  return keys;
}

double CountPauseModel::SignatureScore(const std::string& key) const {
  auto it = scores_.find(key);
  return it == scores_.end() ? prior_ : it->second;
}

double CountPauseModel::ScoreGap(const Segmentation& tokens, std::size_t gap) const {
  for (const std::string& key : Signatures(tokens, gap)) {
    if (auto it = scores_.find(key); it != scores_.end()) return it->second;
  }
  return prior_;
}

CountPauseModel CountPauseModel::WithThreshold(double threshold) const {
  return CountPauseModel(window_, threshold, prior_, scores_);
}

std::string CountPauseModel::Serialize() const {
  std::string out = "thaifront-pause-model\t" + std::to_string(kPauseModelVersion) + "\n";
  out += "window\t" + std::to_string(window_) + "\n";
  out += "threshold\t" + FormatDouble(threshold_) + "\n";
  out += "prior\t" + FormatDouble(prior_) + "\n";
  for (const auto& [key, p] : scores_) out += "score\t" + key + "\t" + FormatDouble(p) + "\n";
  return out;
}

CountPauseModel CountPauseModel::Parse(std::string_view text) {
  const auto lines = SplitLines(text);
  if (lines.empty() || lines[0] != "thaifront-pause-model\t" + std::to_string(kPauseModelVersion)) {
    throw ParseError("missing or unsupported pause model header", 1);
  }
  int window = 0;
  double threshold = -1;
  double prior = -1;
  std::map<std::string, double> scores;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_number = i + 1;
    const auto f = SplitFields(lines[i], '\t');
    if (f[0] == "window" && f.size() == 2) {
      auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), window);
      if (ec != std::errc() || ptr != f[1].data() + f[1].size()) {
        throw ParseError("bad window", line_number);
      }
    } else if (f[0] == "threshold" && f.size() == 2) {
      threshold = ParseDouble(f[1], line_number);
    } else if (f[0] == "prior" && f.size() == 2) {
      prior = ParseDouble(f[1], line_number);
    } else if (f[0] == "score" && f.size() == 3) {
      if (!scores.emplace(std::string(f[1]), ParseDouble(f[2], line_number)).second) {
        throw ParseError("duplicate signature", line_number);
      }
    } else {
      throw ParseError("unknown pause model field", line_number);
    }
  }
  if (window == 0 || threshold < 0 || prior < 0) {
    throw ParseError("pause model lacks window, threshold or prior");
  }
  return CountPauseModel(window, threshold, prior, std::move(scores));
}

CountPauseModel CountPauseModel::Load(const std::string& path) { return Parse(ReadFile(path)); }

void CountPauseModel::Save(const std::string& path) const { WriteFile(path, Serialize()); }

PausedSegmentation SegmentAroundPauses(const PauseAnnotatedSentence& sentence,
                                       const TrieIndex& trie, SegmentMode mode) {
  ValidatePauseAnnotation(sentence);
  const std::u32string text = DecodeUtf8(sentence.raw_text);
  PausedSegmentation out;
  std::size_t start = 0;
  std::vector<std::size_t> cuts = sentence.pause_offsets;
  cuts.push_back(text.size());
  for (std::size_t cut : cuts) {
    const Segmentation chunk =
        Segment(EncodeUtf8(std::u32string_view(text).substr(start, cut - start)), trie, mode);
    auto& t = out.tokens;
    t.tokens.insert(t.tokens.end(), chunk.tokens.begin(), chunk.tokens.end());
    t.oov_flags.insert(t.oov_flags.end(), chunk.oov_flags.begin(), chunk.oov_flags.end());
    if (cut != text.size()) out.pause_gaps.push_back(t.tokens.size());
    start = cut;
  }
  return out;
}

CountPauseModel TrainPauseModel(const std::vector<PauseAnnotatedSentence>& corpus,
                                const TrieIndex& trie, int window, double threshold) {
  if (corpus.empty()) throw ValidationError("pause corpus is empty");
  if (window < 1) throw ValidationError("pause window must be at least 1");
  struct Counts {
    std::size_t pauses = 0;
    std::size_t total = 0;
  };
  std::map<std::string, Counts> counts;
  std::size_t total_pauses = 0;
  std::size_t total_gaps = 0;
  CountPauseModel keyer(window, threshold, 0.0, {});

  for (const auto& sentence : corpus) {
    const PausedSegmentation seg = SegmentAroundPauses(sentence, trie);
    const Segmentation& tokens = seg.tokens;
    const std::set<std::size_t> pause_gaps(seg.pause_gaps.begin(), seg.pause_gaps.end());
    for (std::size_t gap = 1; gap < tokens.tokens.size(); ++gap) {
      const bool pause = pause_gaps.count(gap) != 0;
      ++total_gaps;
      if (pause) ++total_pauses;
      for (const std::string& key : keyer.Signatures(tokens, gap)) {
        Counts& c = counts[key];
        ++c.total;
        if (pause) ++c.pauses;
      }
    }
  }

  const double prior =
      total_gaps == 0 ? 0.0 : static_cast<double>(total_pauses) / static_cast<double>(total_gaps);
  std::map<std::string, double> scores;
  for (const auto& [key, c] : counts) {
    // Add-one smoothing toward the corpus pause rate.
    scores.emplace(key, (static_cast<double>(c.pauses) + prior) /
                            (static_cast<double>(c.total) + 1.0));
  }
  return CountPauseModel(window, threshold, prior, std::move(scores));
}

PauseAnnotatedSentence PredictPauses(std::string_view text, const PauseScorer& model,
                                     const TrieIndex& trie) {
  PauseAnnotatedSentence out;
  out.raw_text = std::string(text);
  const Segmentation tokens = Segment(text, trie);
  std::size_t offset = 0;
  for (std::size_t gap = 1; gap < tokens.tokens.size(); ++gap) {
    offset += CodePointLength(tokens.tokens[gap - 1]);
    if (model.ScoreGap(tokens, gap) >= model.threshold()) out.pause_offsets.push_back(offset);
  }
  return out;
}

PrfScore PauseGapF1(const PauseAnnotatedSentence& gold, const PauseAnnotatedSentence& pred) {
  if (gold.raw_text != pred.raw_text) {
    throw ValidationError("gold and predicted sentences have different text");
  }
  return SetPrf(gold.pause_offsets, pred.pause_offsets);
}

}  // namespace thaifront
