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

// Text stage commands: segment, pauses, g2p, vocab, encode, pipeline and
// validate.

#include <filesystem>
#include <fstream>
#include <memory>

#include "cli_common.h"
#include "thaifront/corpus_io.h"
#include "thaifront/error.h"
#include "thaifront/logging.h"
#include "thaifront/pause_prediction.h"
#include "thaifront/phoneme_tone_encoding.h"
#include "thaifront/phonology.h"
#include "thaifront/pipeline.h"
#include "thaifront/segmentation.h"
#include "thaifront/unicode.h"

namespace thaifront {
namespace cli {

namespace {

// Splits a token line on `sep`. Empty tokens are rejected.
std::vector<std::string> SplitTokens(std::string_view line, std::string_view sep) {
  if (sep.empty()) throw ValidationError("token separator is empty");
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    const std::string_view tok =
        line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    if (tok.empty()) throw ParseError("empty token");
    tokens.emplace_back(tok);
    if (pos == std::string_view::npos) break;
    start = pos + sep.size();
  }
  return tokens;
}

// Token line with pause tags back to a segmentation with pause gaps.
PausedSegmentation ParseTokenLine(std::string_view line, std::string_view sep,
                                  std::string_view pause_tag) {
  PausedSegmentation seg;
  for (auto& tok : SplitTokens(line, sep)) {
    if (tok == pause_tag) {
      const std::size_t gap = seg.tokens.tokens.size();
      if (gap == 0 || (!seg.pause_gaps.empty() && seg.pause_gaps.back() == gap)) {
        throw ParseError("misplaced pause tag");
      }
      seg.pause_gaps.push_back(gap);
      continue;
    }
    seg.tokens.tokens.push_back(NormalizeNfc(tok));
    seg.tokens.oov_flags.push_back(false);
  }
  if (!seg.pause_gaps.empty() && seg.pause_gaps.back() == seg.tokens.tokens.size()) {
    throw ParseError("pause tag at the end of the line");
  }
  return seg;
}

SegmentMode ParseMode(const std::string& mode) {
  if (mode == "longest") return SegmentMode::kLongestMatch;
  if (mode == "frequency") return SegmentMode::kFrequency;
  throw ValidationError("unknown segmentation mode '" + mode + "'");
}

G2p MakeG2p(const std::string& exceptions_path, const std::string& rules_path,
            const std::string& fallback_path) {
  ToneRules rules = rules_path.empty() ? ToneRules::Default() : ToneRules::Load(rules_path);
  ExceptionDictionary exceptions;
  if (!exceptions_path.empty()) {
    exceptions = BuildExceptionDictionary(LoadPhonemeToneAnnotations(exceptions_path));
  }
  G2pFallback fallback;
  if (!fallback_path.empty()) fallback = AnnotationFallback(LoadPhonemeToneAnnotations(fallback_path));
  return G2p(std::move(rules), std::move(exceptions), std::move(fallback));
}

struct SegmentArgs {
  std::string lexicon;
  std::string sep = "|";
  std::string mode = "longest";
  std::string pause_tag;
  bool strict = false;
};

void RegisterSegment(CLI::App* app, Action* action) {
  auto args = std::make_shared<SegmentArgs>();
  CLI::App* sub = app->add_subcommand("segment", "Split lines of Thai text into lexicon words");
  AddOption(sub, "lexicon", args->lexicon, "Lexicon file")->required();
  AddOption(sub, "sep", args->sep, "Output token separator");
  AddOption(sub, "mode", args->mode, "Tie-break mode: longest or frequency");
  AddOption(sub, "pause-tag", args->pause_tag,
            "Treat this tag in the input as a pause and keep it as a token");
  AddFlag(sub, "strict", args->strict, "Stop at the first bad line");
  sub->callback([args, action] {
    *action = [args] {
      const SegmentMode mode = ParseMode(args->mode);
      const TrieIndex trie = TrieIndex::Build(LoadLexicon(args->lexicon));
      return MapLines(std::cin, std::cout, "segment", args->strict, [&](const std::string& line) {
        if (args->pause_tag.empty()) return Segment(NormalizeNfc(line), trie, mode).Join(args->sep);
        const auto sentence = ParsePauseAnnotation(line, args->pause_tag);
        return RenderSegmentationLine(SegmentAroundPauses(sentence, trie, mode), args->sep,
                                      args->pause_tag);
      });
    };
  });
}

struct PausesArgs {
  std::string corpus;
  std::string lexicon;
  std::string out;
  std::string model;
  std::string tag{kDefaultPauseTag};
  int window = 2;
  double threshold = 0.5;
  bool strict = false;
};

void RegisterPauses(CLI::App* app, Action* action) {
  auto args = std::make_shared<PausesArgs>();
  CLI::App* sub = app->add_subcommand("pauses", "Train or apply the pause model");
  sub->require_subcommand(1);

  CLI::App* train = sub->add_subcommand("train", "Estimate a pause model from a tagged corpus");
  AddOption(train, "corpus", args->corpus, "Pause-tagged corpus")->required();
  AddOption(train, "lexicon", args->lexicon, "Lexicon file")->required();
  AddOption(train, "out", args->out, "Model output path")->required();
  AddOption(train, "window", args->window, "Tokens of context on each side");
  AddOption(train, "threshold", args->threshold, "Decision threshold stored in the model");
  AddOption(train, "tag", args->tag, "Pause tag literal");
  train->callback([args, action] {
    *action = [args] {
      const TrieIndex trie = TrieIndex::Build(LoadLexicon(args->lexicon));
      const auto corpus = LoadPauseCorpus(args->corpus, args->tag);
      const CountPauseModel model = TrainPauseModel(corpus, trie, args->window, args->threshold);
      model.Save(args->out);
      Logger()->info(LogLine("pause_model_trained")
                         .Kv("sentences", corpus.size())
                         .Kv("signatures", model.boundary_scores().size())
                         .Kv("prior", model.prior())
                         .str());
      return kExitOk;
    };
  });

  CLI::Option* threshold_opt = nullptr;
  CLI::App* predict = sub->add_subcommand("predict", "Insert pause tags into text on stdin");
  AddOption(predict, "model", args->model, "Pause model")->required();
  AddOption(predict, "lexicon", args->lexicon, "Lexicon file")->required();
  threshold_opt = AddOption(predict, "threshold", args->threshold, "Override the model threshold");
  AddOption(predict, "tag", args->tag, "Pause tag literal");
  AddFlag(predict, "strict", args->strict, "Stop at the first bad line");
  predict->callback([args, action, threshold_opt] {
    const bool override_threshold = threshold_opt->count() > 0;
    *action = [args, override_threshold] {
      CountPauseModel model = CountPauseModel::Load(args->model);
      if (override_threshold) model = model.WithThreshold(args->threshold);
      const TrieIndex trie = TrieIndex::Build(LoadLexicon(args->lexicon));
      return MapLines(std::cin, std::cout, "pauses", args->strict, [&](const std::string& line) {
        return RenderPauseAnnotation(PredictPauses(NormalizeNfc(line), model, trie), args->tag);
      });
    };
  });
}

struct G2pArgs {
  std::string exceptions;
  std::string rules;
  std::string fallback;
  bool tokenized = false;
  std::string sep = "|";
  std::string pause_tag{kDefaultPauseTag};
  bool strict = false;
};

void RegisterG2p(CLI::App* app, Action* action) {
  auto args = std::make_shared<G2pArgs>();
  CLI::App* sub = app->add_subcommand("g2p", "Convert words on stdin to phoneme-tone lines");
  AddOption(sub, "exceptions", args->exceptions, "Exception dictionary (phoneme-tone TSV)");
  AddOption(sub, "rules-table", args->rules, "Tone rules table; default is built in");
  AddOption(sub, "fallback", args->fallback, "Annotations consulted when the rules fail");
  AddFlag(sub, "tokenized", args->tokenized,
          "Input lines are segmenter output; emit one utterance line per input line");
  AddOption(sub, "sep", args->sep, "Token separator in tokenized mode");
  AddOption(sub, "pause-tag", args->pause_tag, "Pause token in tokenized mode");
  AddFlag(sub, "strict", args->strict, "Stop at the first bad line");
  sub->callback([args, action] {
    *action = [args] {
      const G2p g2p = MakeG2p(args->exceptions, args->rules, args->fallback);
      return MapLines(std::cin, std::cout, "g2p", args->strict, [&](const std::string& line) {
        if (!args->tokenized) {
          const std::string word = NormalizeNfc(line);
          return RenderPhonemeToneLine({word, g2p.Convert(word)});
        }
        const PausedSegmentation seg = ParseTokenLine(line, args->sep, args->pause_tag);
        UtteranceLine out;
        out.text = seg.tokens.Join("");
        out.items = PronounceTokens(seg, g2p);
        return RenderUtteranceLine(out);
      });
    };
  });
}

struct VocabArgs {
  std::vector<std::string> annotations;
  std::string out;
};

void RegisterVocab(CLI::App* app, Action* action) {
  auto args = std::make_shared<VocabArgs>();
  CLI::App* sub = app->add_subcommand("vocab", "Build a token vocab from phoneme-tone files");
  AddOption(sub, "annotations", args->annotations, "Phoneme-tone TSV files")->required();
  AddOption(sub, "out", args->out, "Vocab output path")->required();
  sub->callback([args, action] {
    *action = [args] {
      std::vector<PhonemeToneEntry> all;
      for (const auto& path : args->annotations) {
        auto entries = LoadPhonemeToneAnnotations(path);
        all.insert(all.end(), entries.begin(), entries.end());
      }
      const PhonemeVocab vocab = BuildVocab(all);
      vocab.Save(args->out);
      Logger()->info(LogLine("vocab_built").Kv("size", vocab.size()).Kv("base", vocab.base_count()).str());
      return kExitOk;
    };
  });
}

struct EncodeArgs {
  std::string vocab;
  bool strict = false;
};

void RegisterEncode(CLI::App* app, Action* action) {
  auto args = std::make_shared<EncodeArgs>();
  CLI::App* sub = app->add_subcommand("encode", "Map phoneme-tone lines to token ids");
  AddOption(sub, "vocab", args->vocab, "Vocab file")->required();
  AddFlag(sub, "strict", args->strict, "Stop at the first bad line");
  sub->callback([args, action] {
    *action = [args] {
      const PhonemeVocab vocab = PhonemeVocab::Load(args->vocab);
      std::size_t line_number = 0;
      return MapLines(std::cin, std::cout, "encode", args->strict, [&](const std::string& line) {
        ++line_number;
        std::size_t unknown = 0;
        const EncodedSequence enc =
            EncodeUtterance(ParseUtteranceLine(line).items, vocab, &unknown);
        if (unknown > 0) {
          Logger()->warn(LogLine("unknown_phonemes").Kv("line", line_number).Kv("count", unknown).str());
        }
        return RenderIds(enc);
      });
    };
  });
}

struct PipelineArgs {
  PipelineConfig cfg;
  double threshold = 0.5;
  bool strict = false;
  int threads = 1;
  std::string emit_stages;
};

CLI::Option* AddPipelineConfigOptions(CLI::App* sub, PipelineArgs* args) {
  PipelineConfig& cfg = args->cfg;
  AddOption(sub, "lexicon", cfg.lexicon_path, "Lexicon file");
  AddOption(sub, "pause-model", cfg.pause_model_path, "Pause model; omit to skip pauses");
  AddOption(sub, "exceptions", cfg.exceptions_path, "Exception dictionary");
  AddOption(sub, "rules-table", cfg.rules_path, "Tone rules table; default is built in");
  AddOption(sub, "vocab", cfg.vocab_path, "Vocab file");
  AddOption(sub, "tag", cfg.pause_tag, "Pause tag literal for emitted stages");
  AddOption(sub, "sample-rate", cfg.mel.sample_rate, "Audio sample rate");
  AddOption(sub, "fmax", cfg.mel.fmax, "Upper mel frequency");
  AddOption(sub, "seed", cfg.seed, "Random seed");
  return AddOption(sub, "threshold", args->threshold, "Override the pause threshold");
}

void WriteStages(const std::string& dir, const std::vector<std::optional<LineResult>>& results,
                 std::string_view tag) {
  std::filesystem::create_directories(dir);
  std::string pauses;
  std::string segments;
  std::string g2p;
  std::string encoded;
  for (const auto& r : results) {
    if (r) {
      pauses += RenderPauseAnnotation(r->pauses, tag);
      segments += RenderSegmentationLine(r->segmentation, "|", tag);
      if (!r->utterance.text.empty()) g2p += RenderUtteranceLine(r->utterance);
      encoded += RenderIds(r->encoded);
    }
    pauses += '\n';
    segments += '\n';
    g2p += '\n';
    encoded += '\n';
  }
  WriteFile(dir + "/pauses.txt", pauses);
  WriteFile(dir + "/segments.txt", segments);
  WriteFile(dir + "/g2p.tsv", g2p);
  WriteFile(dir + "/encoded.txt", encoded);
}

void RegisterPipeline(CLI::App* app, Action* action) {
  auto args = std::make_shared<PipelineArgs>();
  CLI::App* sub = app->add_subcommand("pipeline", "Raw text lines on stdin to token ids");
  CLI::Option* threshold_opt = AddPipelineConfigOptions(sub, args.get());
  AddFlag(sub, "strict", args->strict, "Stop at the first bad line");
  AddOption(sub, "threads", args->threads, "Worker threads");
  AddOption(sub, "emit-stages", args->emit_stages, "Directory for intermediate outputs");
  sub->callback([args, action, threshold_opt] {
    if (threshold_opt->count() > 0) args->cfg.threshold = args->threshold;
    *action = [args] {
      const Pipeline pipeline = Pipeline::Load(args->cfg);
      const auto lines = ReadLines(std::cin);
      PipelineRun run;
      try {
        run = RunPipeline(lines, pipeline, args->strict, args->threads);
      } catch (const StageError&) {
        return kExitData;
      }
      for (const auto& r : run.results) {
        if (r) std::cout << RenderIds(r->encoded);
        std::cout << '\n';
      }
      if (!args->emit_stages.empty()) WriteStages(args->emit_stages, run.results, args->cfg.pause_tag);
      Logger()->info(LogLine("pipeline_done")
                         .Kv("lines", lines.size())
                         .Kv("failed", run.errors.size())
                         .str());
      return kExitOk;
    };
  });
}

void RegisterValidate(CLI::App* app, Action* action) {
  auto args = std::make_shared<PipelineArgs>();
  CLI::App* sub = app->add_subcommand("validate", "Check a pipeline configuration");
  CLI::Option* threshold_opt = AddPipelineConfigOptions(sub, args.get());
  sub->callback([args, action, threshold_opt] {
    if (threshold_opt->count() > 0) args->cfg.threshold = args->threshold;
    *action = [args] {
      const ConfigReport report = ValidateConfig(args->cfg);
      for (const auto& f : report.failures) std::cout << "failure\t" << f.field << '\t' << f.message << '\n';
      for (const auto& w : report.warnings) std::cout << "warning\t" << w.field << '\t' << w.message << '\n';
      return report.ok() ? kExitOk : kExitData;
    };
  });
}

}  // namespace

void RegisterTextCommands(CLI::App* app, Action* action) {
  RegisterSegment(app, action);
  RegisterPauses(app, action);
  RegisterG2p(app, action);
  RegisterVocab(app, action);
  RegisterEncode(app, action);
  RegisterPipeline(app, action);
  RegisterValidate(app, action);
}

}  // namespace cli
}  // namespace thaifront
