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

#include "thaifront/pipeline.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <set>
#include <thread>

#include "thaifront/error.h"
#include "thaifront/logging.h"
#include "thaifront/unicode.h"

namespace thaifront {

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kPauses:
      return "pauses";
    case Stage::kSegment:
      return "segment";
    case Stage::kG2p:
      return "g2p";
    case Stage::kEncode:
      return "encode";
  }
  return "?";
}

namespace {

bool IsSilentToken(std::string_view token) {
  for (char32_t ch : DecodeUtf8(token)) {
    if (!IsBoundaryChar(ch)) return false;
  }
  return true;
}

std::set<std::string> SequencePhonemes(const PhonemeToneSequence& seq) {
  std::set<std::string> out;
  for (const auto& syl : seq.syllables) out.insert(syl.phonemes.begin(), syl.phonemes.end());
  return out;
}

template <typename F>
bool Check(ConfigReport* report, const std::string& field, const std::string& path,
           bool required, F&& load) {
  if (path.empty()) {
    if (required) report->failures.push_back({field, "path is not set"});
    return false;
  }
  if (!std::filesystem::is_regular_file(path)) {
    report->failures.push_back({field, "file not found: " + path});
    return false;
  }
  try {
    load();
    return true;
  } catch (const std::exception& e) {
    report->failures.push_back({field, e.what()});
    return false;
  }
}

}  // namespace

ConfigReport ValidateConfig(const PipelineConfig& cfg) {
  ConfigReport report;
  std::optional<PhonemeVocab> vocab;
  std::vector<PhonemeToneEntry> exceptions;
  std::optional<ToneRules> rules;
  Check(&report, "lexicon", cfg.lexicon_path, true, [&] {
    if (LoadLexicon(cfg.lexicon_path).empty()) throw ValidationError("lexicon is empty");
  });
  Check(&report, "pause_model", cfg.pause_model_path, false,
        [&] { CountPauseModel::Load(cfg.pause_model_path); });
  Check(&report, "exceptions", cfg.exceptions_path, false,
        [&] { exceptions = LoadPhonemeToneAnnotations(cfg.exceptions_path); });
  Check(&report, "rules", cfg.rules_path, false, [&] { rules = ToneRules::Load(cfg.rules_path); });
  Check(&report, "vocab", cfg.vocab_path, true, [&] { vocab = PhonemeVocab::Load(cfg.vocab_path); });
  if (cfg.pause_tag.empty()) report.failures.push_back({"pause_tag", "tag is empty"});
  if (cfg.threshold && !(*cfg.threshold >= 0.0 && *cfg.threshold <= 1.0)) {
    report.failures.push_back({"threshold", "must lie in [0, 1]"});
  }
  try {
    ValidateMelConfig(cfg.mel);
  } catch (const Error& e) {
    report.failures.push_back({"mel", e.what()});
  }
  if (!(cfg.pitch.fmin > 0.0 && cfg.pitch.fmin < cfg.pitch.fmax)) {
    report.failures.push_back({"pitch", "need 0 < fmin < fmax"});
  }

  if (vocab) {
    std::set<std::string> missing;
    for (const auto& entry : exceptions) {
      for (const auto& ph : SequencePhonemes(entry.pronunciation)) {
        if (!vocab->BaseId(ph)) missing.insert(ph);
      }
    }
    for (const auto& ph : missing) {
      report.warnings.push_back({"vocab", "exception phoneme '" + ph + "' is not in the vocab"});
    }
    const ToneRules& r = rules ? *rules : ToneRules::Default();
    std::set<std::string> rule_missing;
    for (const auto& onset : r.onset_rules()) {
      for (const auto& ph : onset.phonemes) {
        if (!vocab->BaseId(ph)) rule_missing.insert(ph);
      }
    }
    for (const auto& ph : rule_missing) {
      report.warnings.push_back({"vocab", "rules-table phoneme '" + ph + "' is not in the vocab"});
    }
  }
  return report;
}

Utterance PronounceTokens(const PausedSegmentation& seg, const G2p& g2p) {
  Utterance out;
  std::size_t next_pause = 0;
  for (std::size_t i = 0; i < seg.tokens.tokens.size(); ++i) {
    while (next_pause < seg.pause_gaps.size() && seg.pause_gaps[next_pause] == i) {
      out.emplace_back(Pause{});
      ++next_pause;
    }
    const std::string& token = seg.tokens.tokens[i];
    if (IsSilentToken(token)) continue;
    for (auto& syl : g2p.Convert(token).syllables) out.emplace_back(std::move(syl));
  }
  return out;
}

std::string RenderSegmentationLine(const PausedSegmentation& seg, std::string_view sep,
                                   std::string_view pause_tag) {
  std::string out;
  std::size_t next_pause = 0;
  for (std::size_t i = 0; i < seg.tokens.tokens.size(); ++i) {
    if (i > 0) out += sep;
    if (next_pause < seg.pause_gaps.size() && seg.pause_gaps[next_pause] == i) {
      out += pause_tag;
      out += sep;
      ++next_pause;
    }
    out += seg.tokens.tokens[i];
  }
  return out;
}

Pipeline Pipeline::Load(const PipelineConfig& cfg) {
  const ConfigReport report = ValidateConfig(cfg);
  if (!report.ok()) {
    std::string msg = "invalid pipeline config:";
    for (const auto& f : report.failures) msg += " " + f.field + " (" + f.message + ");";
    throw ValidationError(msg);
  }
  for (const auto& w : report.warnings) {
    Logger()->warn(LogLine("config_warning").Kv("field", w.field).Kv("detail", w.message).str());
  }
  std::optional<CountPauseModel> pause_model;
  if (!cfg.pause_model_path.empty()) {
    pause_model = CountPauseModel::Load(cfg.pause_model_path);
    if (cfg.threshold) pause_model = pause_model->WithThreshold(*cfg.threshold);
  }
  ToneRules rules = cfg.rules_path.empty() ? ToneRules::Default() : ToneRules::Load(cfg.rules_path);
  ExceptionDictionary exceptions;
  if (!cfg.exceptions_path.empty()) {
    exceptions = BuildExceptionDictionary(LoadPhonemeToneAnnotations(cfg.exceptions_path));
  }
  return Pipeline(TrieIndex::Build(LoadLexicon(cfg.lexicon_path)), std::move(pause_model),
                  G2p(std::move(rules), std::move(exceptions)),
                  PhonemeVocab::Load(cfg.vocab_path));
}

Pipeline::Pipeline(TrieIndex trie, std::optional<CountPauseModel> pause_model, G2p g2p,
                   PhonemeVocab vocab)
    : trie_(std::move(trie)),
      pause_model_(std::move(pause_model)),
      g2p_(std::move(g2p)),
      vocab_(std::move(vocab)) {}

LineResult Pipeline::ProcessLine(std::string_view line) const {
  LineResult r;
  Stage stage = Stage::kPauses;
  try {
    const std::string text = NormalizeNfc(line);
    if (pause_model_ && !text.empty()) {
      r.pauses = PredictPauses(text, *pause_model_, trie_);
    } else {
      r.pauses.raw_text = text;
    }
    stage = Stage::kSegment;
    r.segmentation = SegmentAroundPauses(r.pauses, trie_);
    stage = Stage::kG2p;
    r.utterance.text = text;
    r.utterance.items = PronounceTokens(r.segmentation, g2p_);
    stage = Stage::kEncode;
    r.encoded = EncodeUtterance(r.utterance.items, vocab_, &r.unknown_phonemes);
  } catch (const Error& e) {
    throw StageError(stage, e.what());
  }
  return r;
}

PipelineRun RunPipeline(const std::vector<std::string>& lines, const Pipeline& pipeline,
                        bool strict, int threads) {
  PipelineRun run;
  run.results.resize(lines.size());
  std::vector<std::optional<LineError>> errors(lines.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= lines.size()) break;
      try {
        run.results[i] = pipeline.ProcessLine(lines[i]);
      } catch (const StageError& e) {
        errors[i] = LineError{i + 1, e.stage(), e.detail()};
        if (strict) stop.store(true);
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(lines.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (!e) continue;
    Logger()->error(LogLine("line_failed")
                        .Kv("line", e->line)
                        .Kv("stage", StageName(e->stage))
                        .Kv("error", e->message)
                        .str());
    if (strict) {
      throw StageError(e->stage, "line " + std::to_string(e->line) + ": " + e->message);
    }
    run.errors.push_back(std::move(*e));
  }
  return run;
}

}  // namespace thaifront
