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

// Audio commands: features and train.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <sstream>

#include "cli_common.h"
#include "thaifront/audio_features.h"
#include "thaifront/corpus_io.h"
#include "thaifront/error.h"
#include "thaifront/logging.h"
#include "thaifront/prosody_model.h"

namespace thaifront {
namespace cli {

namespace {

std::string FeaturePath(const std::string& dir, std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof(name), "%06zu.feat", index);
  return (std::filesystem::path(dir) / name).string();
}

// Token ids per line of an `encode` output file. Blank lines stay empty.
std::vector<std::vector<int>> LoadEncoded(const std::string& path) {
  std::vector<std::vector<int>> out;
  std::size_t line_number = 0;
  const std::string content = ReadFile(path);
  for (std::string_view line : SplitLines(content)) {
    ++line_number;
    std::vector<int> ids;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) {
      std::size_t used = 0;
      int id = -1;
      try {
        id = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || id < 0) throw ParseError("bad token id '" + tok + "'", line_number);
      ids.push_back(id);
    }
    out.push_back(std::move(ids));
  }
  return out;
}

std::string Resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

const FeatureSection& Section(const FeatureRecord& rec, const std::string& name,
                              const std::string& path) {
  auto it = rec.find(name);
  if (it == rec.end()) throw ValidationError(path + ": missing section '" + name + "'");
  return it->second;
}

struct FeaturesArgs {
  std::string manifest;
  std::string out;
  std::string encoded;
  MelConfig mel;
  PitchConfig pitch;
  std::size_t style_dim = kDefaultStyleDim;
  bool strict = false;
};

void RegisterFeatures(CLI::App* app, Action* action) {
  auto args = std::make_shared<FeaturesArgs>();
  CLI::App* sub = app->add_subcommand("features", "Extract acoustic features for a manifest");
  AddOption(sub, "manifest", args->manifest, "Audio manifest")->required();
  AddOption(sub, "out", args->out, "Output directory")->required();
  AddOption(sub, "encoded", args->encoded,
            "Token ids per manifest line, for uniform durations without an alignment");
  AddOption(sub, "fft-size", args->mel.fft_size, "FFT size");
  AddOption(sub, "hop", args->mel.hop, "Hop in samples");
  AddOption(sub, "win", args->mel.win, "Window in samples");
  AddOption(sub, "n-mels", args->mel.n_mels, "Mel bands");
  AddOption(sub, "fmin", args->mel.fmin, "Lower mel frequency");
  AddOption(sub, "fmax", args->mel.fmax, "Upper mel frequency");
  AddOption(sub, "pitch-fmin", args->pitch.fmin, "Lowest f0 in Hz");
  AddOption(sub, "pitch-fmax", args->pitch.fmax, "Highest f0 in Hz");
  AddOption(sub, "voicing-threshold", args->pitch.voicing_threshold, "Autocorrelation voicing threshold");
  AddOption(sub, "style-dim", args->style_dim, "Style vector size");
  AddFlag(sub, "strict", args->strict, "Stop at the first bad record");
  sub->callback([args, action] {
    *action = [args] {
      const auto records = LoadManifest(args->manifest);
      const std::string base = std::filesystem::path(args->manifest).parent_path().string();
      std::vector<std::vector<int>> encoded;
      if (!args->encoded.empty()) {
        encoded = LoadEncoded(args->encoded);
        if (encoded.size() != records.size()) {
          throw ValidationError("encoded file has " + std::to_string(encoded.size()) +
                                " lines for " + std::to_string(records.size()) + " records");
        }
      }
      std::filesystem::create_directories(args->out);
      std::size_t failed = 0;
      for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        try {
          const Waveform w = ReadWav(Resolve(base, rec.audio_path));
          if (w.sample_rate != rec.sample_rate) {
            throw ValidationError("WAV rate " + std::to_string(w.sample_rate) +
                                  " differs from manifest rate " + std::to_string(rec.sample_rate));
          }
          MelConfig cfg = args->mel;
          cfg.sample_rate = rec.sample_rate;
          const MelFrames mel = MelSpectrogram(w, cfg);
          const auto pitch = ExtractPitch(w, cfg, args->pitch);
          const auto energy = ExtractEnergy(mel);
          std::vector<int> durations;
          if (rec.alignment_path) {
            const auto rows = LoadAlignment(Resolve(base, *rec.alignment_path));
            if (!encoded.empty() && encoded[i].size() != rows.size()) {
              throw ValidationError("alignment rows do not match the token count");
            }
            durations = PhonemeDurations(rows.size(), mel.n_frames, rows);
          } else if (!encoded.empty()) {
            durations = PhonemeDurations(encoded[i].size(), mel.n_frames);
          } else {
            throw ValidationError("no alignment and no --encoded token counts");
          }
          const auto style = StyleVector(mel, args->style_dim);
          SaveFeatureRecord(MakeFeatureRecord(mel, pitch, energy, durations, style),
                            FeaturePath(args->out, i));
        } catch (const Error& e) {
          ++failed;
          Logger()->error(LogLine("record_failed")
                              .Kv("line", i + 1)
                              .Kv("stage", "features")
                              .Kv("error", e.what())
                              .str());
          if (args->strict) return kExitData;
        }
      }
      Logger()->info(LogLine("features_done").Kv("records", records.size()).Kv("failed", failed).str());
      return kExitOk;
    };
  });
}

struct TrainArgs {
  std::string features;
  std::string encoded;
  std::string vocab;
  std::string out;
  TrainConfig cfg;
  std::size_t embed_dim = 16;
};

void RegisterTrain(CLI::App* app, Action* action) {
  auto args = std::make_shared<TrainArgs>();
  args->cfg.learning_rate = 1e-3;
  CLI::App* sub = app->add_subcommand("train", "Fit the duration, pitch and energy predictors");
  AddOption(sub, "features", args->features, "Feature directory written by 'features'")->required();
  AddOption(sub, "encoded", args->encoded, "Token ids, one line per feature record")->required();
  AddOption(sub, "vocab", args->vocab, "Vocab the ids come from")->required();
  AddOption(sub, "out", args->out, "Model output path")->required();
  AddOption(sub, "steps", args->cfg.steps, "Gradient steps");
  AddOption(sub, "lr", args->cfg.learning_rate, "Learning rate");
  AddOption(sub, "seed", args->cfg.seed, "Initialisation seed");
  AddOption(sub, "window", args->cfg.window, "Context window in tokens");
  AddOption(sub, "init-scale", args->cfg.init_scale, "Std of the initial weights");
  AddOption(sub, "embed-dim", args->embed_dim, "Decoder-loss embedding size");
  sub->callback([args, action] {
    *action = [args] {
      const PhonemeVocab vocab = PhonemeVocab::Load(args->vocab);
      const auto encoded = LoadEncoded(args->encoded);
      std::vector<ProsodyExample> dataset;
      for (std::size_t i = 0; i < encoded.size(); ++i) {
        if (encoded[i].empty()) continue;
        const std::string path = FeaturePath(args->features, i);
        if (!std::filesystem::exists(path)) {
          Logger()->warn(LogLine("missing_features").Kv("line", i + 1).Kv("path", path).str());
          continue;
        }
        const FeatureRecord rec = LoadFeatureRecord(path);
        const auto& dur = Section(rec, "durations", path);
        const auto& pitch = Section(rec, "pitch", path);
        const auto& energy = Section(rec, "energy", path);
        const auto& style = Section(rec, "style", path);
        const auto& mel = Section(rec, "mel", path);
        if (dur.data.size() != encoded[i].size()) {
          throw ValidationError(path + ": durations do not match the token count");
        }
        ProsodyExample ex;
        ex.ids = encoded[i];
        ex.style.assign(style.data.begin(), style.data.end());
        std::vector<int> d;
        for (float f : dur.data) d.push_back(static_cast<int>(std::lround(f)));
        ex.targets = TokenTargets(d, std::vector<double>(pitch.data.begin(), pitch.data.end()),
                                  std::vector<double>(energy.data.begin(), energy.data.end()));
        MelFrames m;
        m.n_frames = mel.rows;
        m.n_mels = mel.cols;
        m.values.assign(mel.data.begin(), mel.data.end());
        m.config.n_mels = static_cast<int>(mel.cols);
        ex.mel = std::move(m);
        dataset.push_back(std::move(ex));
      }
      const TrainResult result = TrainPredictors(
          dataset, vocab.size(), args->cfg,
          LinearMelDecoderLoss(vocab.size(), args->embed_dim, args->cfg.seed));
      result.model.Save(args->out);
      Logger()->info(LogLine("train_done")
                         .Kv("examples", dataset.size())
                         .Kv("initial_loss", result.initial_loss.Total())
                         .Kv("final_loss", result.final_loss.Total())
                         .Kv("duration_loss", result.final_loss.duration)
                         .Kv("pitch_loss", result.final_loss.pitch)
                         .Kv("energy_loss", result.final_loss.energy)
                         .Kv("decoder_loss", result.decoder_loss)
                         .Kv("joint_loss", result.joint_loss)
                         .str());
      return kExitOk;
    };
  });
}

}  // namespace

void RegisterAudioCommands(CLI::App* app, Action* action) {
  RegisterFeatures(app, action);
  RegisterTrain(app, action);
}

}  // namespace cli
}  // namespace thaifront
