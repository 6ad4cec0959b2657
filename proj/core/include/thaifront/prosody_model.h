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

// Prosody prediction from token ids and a style vector, plus the loss terms
// used to train and score it.
//
// Each token is featurised as [one-hot(token) | mean one-hot of the 2w
// neighbours], with indices clamped at the edges, then concatenated with the
// utterance style vector. Duration is softplus of an affine map; pitch and
// energy are plain affine maps. Predictors train by full-batch gradient
// descent on mean squared error.

#ifndef THAIFRONT_PROSODY_MODEL_H_
#define THAIFRONT_PROSODY_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thaifront/audio_features.h"
#include "thaifront/phoneme_tone_encoding.h"

namespace thaifront {

struct ContextualRepresentation {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;  // row-major

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

// cols = 2 * vocab_size. Throws ValidationError for empty ids or an id
// outside [0, vocab_size).
ContextualRepresentation BuildContextualRepresentation(const std::vector<int>& ids,
                                                       std::size_t vocab_size, int window);

struct Regressor {
  std::vector<double> weights;
  double bias = 0.0;
  bool operator==(const Regressor&) const = default;
};

class ProsodyPredictor {
 public:
  ProsodyPredictor() = default;
  // Zero weights.
  ProsodyPredictor(std::size_t vocab_size, int window, std::size_t style_dim);

  // Weights drawn from N(0, scale^2) with a fixed engine, biases zero.
  static ProsodyPredictor Random(std::size_t vocab_size, int window, std::size_t style_dim,
                                 std::uint64_t seed, double scale);

  std::size_t vocab_size() const { return vocab_size_; }
  int window() const { return window_; }
  std::size_t style_dim() const { return style_dim_; }
  std::size_t input_dim() const { return 2 * vocab_size_ + style_dim_; }

  Regressor duration;
  Regressor pitch;
  Regressor energy;

  // Little endian: "THFPROS\0", u32 version, u32 vocab_size, i32 window,
  // u32 style_dim, then for duration, pitch, energy: u32 count, count
  // float64 weights, float64 bias.
  std::string Serialize() const;
  static ProsodyPredictor Deserialize(std::string_view bytes);
  static ProsodyPredictor Load(const std::string& path);
  void Save(const std::string& path) const;

  bool operator==(const ProsodyPredictor&) const = default;

 private:
  std::size_t vocab_size_ = 0;
  int window_ = 0;
  std::size_t style_dim_ = 0;
};

inline constexpr std::uint32_t kProsodyModelVersion = 1;

struct ProsodyPrediction {
  std::vector<double> durations;
  std::vector<double> pitch;
  std::vector<double> energy;
};

double Softplus(double z);

// Throws ValidationError when rep.cols + style.size() != model.input_dim().
ProsodyPrediction PredictProsody(const ContextualRepresentation& rep,
                                 const std::vector<double>& style,
                                 const ProsodyPredictor& model);

// ---------------------------------------------------------------------------
// Losses

// Mean absolute sample difference. Throws ValidationError on a length or
// rate mismatch or empty input.
double LossTime(const Waveform& w, const Waveform& w_hat);
// Mean absolute cell difference. Throws ValidationError on a shape or
// config mismatch or empty input.
double LossFreq(const MelFrames& m, const MelFrames& m_hat);

struct LossWeights {
  double time = 1.0;
  double freq = 1.0;
  double perceptual = 1.0;
};

using PerceptualLossHook = std::function<double(const Waveform&, const Waveform&)>;

// A perceptual term that is always zero.
double ZeroPerceptualLoss(const Waveform&, const Waveform&);

// time * lt + freq * lf + perceptual * lp. Throws ValidationError on any
// negative or non-finite input.
double ReconLoss(double lt, double lf, double lp, const LossWeights& weights);
// Computes lt and lf directly and lp through the hook.
double ReconLoss(const Waveform& w, const Waveform& w_hat, const MelConfig& mel_cfg,
                 const LossWeights& weights,
                 const PerceptualLossHook& perceptual = ZeroPerceptualLoss);

// l_duration + l_pitch + l_energy + l_decoder, same input checks.
double JointLoss(double l_duration, double l_pitch, double l_energy, double l_decoder);

// ---------------------------------------------------------------------------
// Training

struct ProsodyTargets {
  std::vector<double> durations;
  std::vector<double> pitch;
  std::vector<double> energy;
};

// Per-token targets: durations as given, pitch and energy averaged over each
// token's frame span (0 for a zero-length span). Throws ValidationError when
// the durations do not sum to the frame count.
ProsodyTargets TokenTargets(const std::vector<int>& durations,
                            const std::vector<double>& frame_pitch,
                            const std::vector<double>& frame_energy);

struct ProsodyExample {
  std::vector<int> ids;
  std::vector<double> style;
  ProsodyTargets targets;
  // Ground-truth log mel, for the decoder loss hook only.
  std::optional<MelFrames> mel;
};

struct PredictorLoss {
  double duration = 0.0;
  double pitch = 0.0;
  double energy = 0.0;
  double Total() const { return duration + pitch + energy; }
};

// Mean squared error of each predictor over every token of the dataset.
PredictorLoss EvaluatePredictorLoss(const ProsodyPredictor& model,
                                    const std::vector<ProsodyExample>& dataset);

// Gradient of EvaluatePredictorLoss(...).Total() with respect to every
// parameter, laid out like the model itself.
ProsodyPredictor PredictorGradient(const ProsodyPredictor& model,
                                   const std::vector<ProsodyExample>& dataset,
                                   PredictorLoss* loss = nullptr);

// Fixed-size embedding per token id.
class PhonemeEmbedding {
 public:
  PhonemeEmbedding(std::size_t vocab_size, std::size_t dim, std::uint64_t seed);
  const double* row(int id) const;
  std::size_t vocab_size() const { return vocab_size_; }
  std::size_t dim() const { return dim_; }

 private:
  std::size_t vocab_size_;
  std::size_t dim_;
  std::vector<double> table_;
};

// Decoder stand-in: each token's embedding, repeated for its duration and
// mapped to mel bands by a linear readout.
class LinearMelDecoder {
 public:
  LinearMelDecoder(std::size_t vocab_size, std::size_t embed_dim, std::size_t n_mels,
                   std::uint64_t seed);

  MelFrames Decode(const std::vector<int>& ids, const std::vector<int>& durations,
                   const MelConfig& cfg) const;

 private:
  PhonemeEmbedding embedding_;
  std::size_t n_mels_;
  std::vector<double> readout_;  // [embed_dim x n_mels]
};

// Returns the decoder term of the joint loss for one example.
using DecoderLossHook = std::function<double(const ProsodyExample&)>;

// LossFreq between an example's mel and the LinearMelDecoder output driven by
// its target durations. Examples without a mel score 0.
DecoderLossHook LinearMelDecoderLoss(std::size_t vocab_size, std::size_t embed_dim,
                                     std::uint64_t seed);

struct TrainConfig {
  int steps = 1000;
  double learning_rate = 0.05;
  std::uint64_t seed = 0;
  double init_scale = 0.01;
  int window = 2;
};

struct TrainResult {
  ProsodyPredictor model;
  PredictorLoss initial_loss;
  PredictorLoss final_loss;
  double decoder_loss = 0.0;
  double joint_loss = 0.0;
};

// Throws ValidationError on an empty dataset, non-finite targets, a target
// length that differs from the id count, or inconsistent style dims.
TrainResult TrainPredictors(const std::vector<ProsodyExample>& dataset, std::size_t vocab_size,
                            const TrainConfig& cfg, const DecoderLossHook& decoder_loss = nullptr);

// Same, continuing from `init` instead of a random model.
TrainResult TrainPredictorsFrom(const ProsodyPredictor& init,
                                const std::vector<ProsodyExample>& dataset,
                                const TrainConfig& cfg,
                                const DecoderLossHook& decoder_loss = nullptr);

}  // namespace thaifront

#endif  // THAIFRONT_PROSODY_MODEL_H_
