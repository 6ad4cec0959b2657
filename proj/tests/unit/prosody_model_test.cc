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

#include "thaifront/prosody_model.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "prosody_oracles.h"
#include "test_util.h"
#include "thaifront/error.h"

namespace thaifront {
namespace {

TEST(ContextTest, WindowZeroIsOneHot) {
  const std::vector<int> ids = {2, 0, 3, 3};
  const auto rep = BuildContextualRepresentation(ids, 5, 0);
  ASSERT_EQ(rep.rows, 4u);
  ASSERT_EQ(rep.cols, 10u);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t c = 0; c < rep.cols; ++c) {
      EXPECT_EQ(rep.at(i, c), c == static_cast<std::size_t>(ids[i]) ? 1.0 : 0.0);
    }
  }
}

TEST(ContextTest, WindowMeanWithEdgeClamping) {
  const auto rep = BuildContextualRepresentation({0, 1, 2}, 3, 1);
  // Row 0: neighbours clamp to {0, 1}.
  EXPECT_EQ(rep.at(0, 0), 1.0);
  EXPECT_EQ(rep.at(0, 3 + 0), 0.5);
  EXPECT_EQ(rep.at(0, 3 + 1), 0.5);
  // Row 1: neighbours {0, 2}.
  EXPECT_EQ(rep.at(1, 3 + 0), 0.5);
  EXPECT_EQ(rep.at(1, 3 + 2), 0.5);
  EXPECT_EQ(rep.at(1, 3 + 1), 0.0);
  for (std::size_t r = 0; r < rep.rows; ++r) {
    double second = 0;
    for (std::size_t c = 3; c < 6; ++c) second += rep.at(r, c);
    EXPECT_DOUBLE_EQ(second, 1.0);
  }
}

TEST(ContextTest, Locality) {
  std::mt19937_64 rng(1);
  for (int iter = 0; iter < 500; ++iter) {
    const int window = static_cast<int>(rng() % 4);
    const std::size_t vocab = 6;
    std::vector<int> ids(3 + rng() % 12);
    for (int& id : ids) id = static_cast<int>(rng() % vocab);
    const std::size_t i = rng() % ids.size();
    auto other = ids;
    // Permute and rewrite everything outside [i - window, i + window].
    std::vector<std::size_t> outside;
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (j + window < i || j > i + window) outside.push_back(j);
    }
    for (std::size_t j : outside) other[j] = static_cast<int>(rng() % vocab);
    const auto a = BuildContextualRepresentation(ids, vocab, window);
    const auto b = BuildContextualRepresentation(other, vocab, window);
    for (std::size_t c = 0; c < a.cols; ++c) ASSERT_EQ(a.at(i, c), b.at(i, c));
  }
}

TEST(ContextTest, RejectsBadIds) {
  EXPECT_THROW(BuildContextualRepresentation({0, 5}, 5, 1), ValidationError);
  EXPECT_THROW(BuildContextualRepresentation({0, -1}, 5, 1), ValidationError);
  EXPECT_THROW(BuildContextualRepresentation({0}, 5, -1), ValidationError);
}

TEST(PredictTest, ZeroModel) {
  const ProsodyPredictor model(4, 1, 3);
  const auto rep = BuildContextualRepresentation({0, 1, 2, 3, 1}, 4, 1);
  const auto p = PredictProsody(rep, {0.5, -1.0, 2.0}, model);
  ASSERT_EQ(p.durations.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_DOUBLE_EQ(p.durations[i], std::log(2.0));
    EXPECT_EQ(p.pitch[i], 0.0);
    EXPECT_EQ(p.energy[i], 0.0);
  }
}

TEST(PredictTest, HandComputedTwoTokens) {
  // vocab 2, window 1, style dim 1: input [onehot(2) | neighbour mean(2) | s].
  ProsodyPredictor m(2, 1, 1);
  m.duration.weights = {1.0, -1.0, 0.5, 0.25, 2.0};
  m.duration.bias = -0.5;
  m.pitch.weights = {3.0, 1.0, -2.0, 4.0, 1.0};
  m.pitch.bias = 10.0;
  m.energy.weights = {0.0, 1.0, 1.0, 0.0, -1.0};
  m.energy.bias = 0.0;
  const auto rep = BuildContextualRepresentation({0, 1}, 2, 1);
  // Row 0: [1 0 | 0.5 0.5]; row 1: [0 1 | 0.5 0.5]; s = 0.5.
  const auto p = PredictProsody(rep, {0.5}, m);
  const double z0 = 1.0 + 0.5 * 0.5 + 0.25 * 0.5 + 2.0 * 0.5 - 0.5;
  const double z1 = -1.0 + 0.5 * 0.5 + 0.25 * 0.5 + 2.0 * 0.5 - 0.5;
  EXPECT_DOUBLE_EQ(p.durations[0], std::log1p(std::exp(z0)));
  EXPECT_DOUBLE_EQ(p.durations[1], std::log1p(std::exp(z1)));
  EXPECT_DOUBLE_EQ(p.pitch[0], 3.0 - 1.0 + 2.0 + 0.5 + 10.0);
  EXPECT_DOUBLE_EQ(p.pitch[1], 1.0 - 1.0 + 2.0 + 0.5 + 10.0);
  EXPECT_DOUBLE_EQ(p.energy[0], 0.5 - 0.5);
  EXPECT_DOUBLE_EQ(p.energy[1], 1.0 + 0.5 - 0.5);
}

TEST(PredictTest, ShapesAndErrors) {
  std::mt19937_64 rng(2);
  for (int iter = 0; iter < 50; ++iter) {
    const std::size_t vocab = 1 + rng() % 9;
    const std::size_t style = rng() % 5;
    const int window = static_cast<int>(rng() % 3);
    const auto m = ProsodyPredictor::Random(vocab, window, style, iter, 1.0);
    std::vector<int> ids(1 + rng() % 20);
    for (int& id : ids) id = static_cast<int>(rng() % vocab);
    const auto p =
        PredictProsody(BuildContextualRepresentation(ids, vocab, window),
                       std::vector<double>(style, 1.0), m);
    EXPECT_EQ(p.durations.size(), ids.size());
    EXPECT_EQ(p.pitch.size(), ids.size());
    EXPECT_EQ(p.energy.size(), ids.size());
    for (double d : p.durations) EXPECT_GE(d, 0.0);
  }
  const ProsodyPredictor m(3, 1, 2);
  EXPECT_THROW(PredictProsody(BuildContextualRepresentation({0}, 3, 1), {1.0}, m),
               ValidationError);
  EXPECT_THROW(PredictProsody(BuildContextualRepresentation({0}, 4, 1), {1.0, 2.0}, m),
               ValidationError);
}

TEST(SoftplusTest, StableAtExtremes) {
  EXPECT_DOUBLE_EQ(Softplus(0.0), std::log(2.0));
  EXPECT_DOUBLE_EQ(Softplus(800.0), 800.0);
  EXPECT_GE(Softplus(-800.0), 0.0);
  EXPECT_TRUE(std::isfinite(Softplus(-800.0)));
}

TEST(LossTest, TimeDomain) {
  Waveform a, b;
  a.samples = {1.0f, 1.0f};
  b.samples = {0.0f, 0.0f};
  EXPECT_EQ(LossTime(a, b), 1.0);
  EXPECT_EQ(LossTime(a, a), 0.0);
  b.samples = {0.0f};
  EXPECT_THROW(LossTime(a, b), ValidationError);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<float> u(-1, 1);
  a.samples.resize(257);
  b.samples.resize(257);
  for (int iter = 0; iter < 20; ++iter) {
    long double acc = 0;
    for (std::size_t i = 0; i < 257; ++i) {
      a.samples[i] = u(rng);
      b.samples[i] = u(rng);
      acc += std::fabs(static_cast<long double>(a.samples[i]) - b.samples[i]);
    }
    EXPECT_NEAR(LossTime(a, b), static_cast<double>(acc / 257), 1e-12);
  }
}

TEST(LossTest, FrequencyDomain) {
  MelFrames m;
  m.n_frames = 2;
  m.n_mels = 3;
  m.values = {0, 1, 2, 3, 4, 5};
  MelFrames u = m;
  for (double& v : u.values) v += 1.0;
  EXPECT_EQ(LossFreq(m, m), 0.0);
  EXPECT_EQ(LossFreq(m, u), 1.0);
  MelFrames shape = m;
  shape.n_frames = 3;
  shape.n_mels = 2;
  EXPECT_THROW(LossFreq(m, shape), ValidationError);
  MelFrames cfg = m;
  cfg.config.hop = 128;
  EXPECT_THROW(LossFreq(m, cfg), ValidationError);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  m.values.resize(6);
  for (int iter = 0; iter < 20; ++iter) {
    long double acc = 0;
    for (std::size_t i = 0; i < 6; ++i) {
      m.values[i] = g(rng);
      u.values[i] = g(rng);
      acc += std::fabs(static_cast<long double>(m.values[i]) - u.values[i]);
    }
    EXPECT_NEAR(LossFreq(m, u), static_cast<double>(acc / 6), 1e-12);
  }
}

TEST(LossTest, ReconAndJointArithmetic) {
  EXPECT_DOUBLE_EQ(ReconLoss(0.1, 0.2, 0.0, LossWeights{}), 0.1 + 0.2);
  EXPECT_EQ(ReconLoss(0.7, 3.0, 9.0, LossWeights{0, 0, 0}), 0.0);
  EXPECT_EQ(JointLoss(1, 2, 3, 4), 10.0);
  EXPECT_EQ(JointLoss(0, 0, 0, 0), 0.0);
  EXPECT_THROW(ReconLoss(-0.1, 0, 0, LossWeights{}), ValidationError);
  EXPECT_THROW(ReconLoss(0.1, 0, 0, LossWeights{-1, 1, 1}), ValidationError);
  EXPECT_THROW(JointLoss(1, 2, -3, 4), ValidationError);
  EXPECT_THROW(JointLoss(1, 2, NAN, 4), ValidationError);
}

TEST(LossTest, ReconLinearInWeights) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 10);
  for (int iter = 0; iter < 200; ++iter) {
    const double lt = u(rng), lf = u(rng), lp = u(rng);
    const LossWeights a{u(rng), u(rng), u(rng)};
    const LossWeights b{u(rng), u(rng), u(rng)};
    const double alpha = u(rng);
    const LossWeights mix{a.time + alpha * b.time, a.freq + alpha * b.freq,
                          a.perceptual + alpha * b.perceptual};
    const double lhs = ReconLoss(lt, lf, lp, mix);
    const double rhs = ReconLoss(lt, lf, lp, a) + alpha * ReconLoss(lt, lf, lp, b);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::fabs(rhs));
  }
}

TEST(LossTest, JointPermutationInvariant) {
  std::array<double, 4> v = {0.3, 1.7, 2.25, 0.05};
  const double ref = JointLoss(v[0], v[1], v[2], v[3]);
  std::sort(v.begin(), v.end());
  do {
    EXPECT_NEAR(JointLoss(v[0], v[1], v[2], v[3]), ref, 1e-15);
  } while (std::next_permutation(v.begin(), v.end()));
}

TEST(LossTest, WaveformReconUsesHook) {
  Waveform a;
  a.samples.assign(4096, 0.0f);
  Waveform b = a;
  for (std::size_t i = 0; i < b.samples.size(); ++i) b.samples[i] = 0.1f * std::sin(0.05f * i);
  const double lt = LossTime(a, b);
  const double lf = LossFreq(MelSpectrogram(a), MelSpectrogram(b));
  EXPECT_DOUBLE_EQ(ReconLoss(a, b, MelConfig{}, LossWeights{}), lt + lf);
  const auto hook = [](const Waveform&, const Waveform&) { return 2.0; };
  EXPECT_DOUBLE_EQ(ReconLoss(a, b, MelConfig{}, LossWeights{1, 1, 0.5}, hook), lt + lf + 1.0);
}

TEST(TargetsTest, SpanAveraging) {
  const auto t = TokenTargets({2, 0, 3}, {100, 200, 0, 0, 300}, {1, 3, 2, 2, 5});
  EXPECT_EQ(t.durations, (std::vector<double>{2, 0, 3}));
  EXPECT_EQ(t.pitch, (std::vector<double>{150, 0, 100}));
  EXPECT_EQ(t.energy, (std::vector<double>{2, 0, 3}));
  EXPECT_THROW(TokenTargets({2, 2}, {1, 2, 3}, {1, 2, 3}), ValidationError);
}

TEST(TargetsTest, MatchesIndependentAveraging) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<int> d(1 + rng() % 8);
    for (int& x : d) x = static_cast<int>(rng() % 5);
    const int frames = std::accumulate(d.begin(), d.end(), 0);
    std::vector<double> p(frames), e(frames);
    for (int f = 0; f < frames; ++f) {
      p[f] = g(rng);
      e[f] = g(rng);
    }
    const auto t = TokenTargets(d, p, e);
    // Prefix sums, a different route to the same averages.
    std::vector<double> cp(frames + 1, 0), ce(frames + 1, 0);
    for (int f = 0; f < frames; ++f) {
      cp[f + 1] = cp[f] + p[f];
      ce[f + 1] = ce[f] + e[f];
    }
    int start = 0;
    for (std::size_t k = 0; k < d.size(); ++k) {
      const double ep = d[k] ? (cp[start + d[k]] - cp[start]) / d[k] : 0.0;
      const double ee = d[k] ? (ce[start + d[k]] - ce[start]) / d[k] : 0.0;
      EXPECT_NEAR(t.pitch[k], ep, 1e-12);
      EXPECT_NEAR(t.energy[k], ee, 1e-12);
      start += d[k];
    }
  }
}

TEST(GradientTest, MatchesFiniteDifferences) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t vocab = 2 + rng() % 5;
    const std::size_t style = rng() % 4;
    const int window = static_cast<int>(rng() % 3);
    const auto model = ProsodyPredictor::Random(vocab, window, style, 100 + iter, 0.7);
    const auto data = testing::RandomDataset(vocab, style, 1 + rng() % 3, 6, rng);
    const auto check = testing::CheckGradient(model, data, 1e-4, 1e-8);
    EXPECT_EQ(check.failures, 0u) << "instance " << iter;
    EXPECT_EQ(check.params, 3 * (model.input_dim() + 1));
  }
}

TEST(TrainTest, ZeroLearningRateKeepsWeights) {
  std::mt19937_64 rng(8);
  const auto data = testing::RandomDataset(5, 2, 3, 6, rng);
  const auto init = ProsodyPredictor::Random(5, 1, 2, 3, 0.3);
  TrainConfig cfg;
  cfg.steps = 50;
  cfg.learning_rate = 0.0;
  EXPECT_EQ(TrainPredictorsFrom(init, data, cfg).model, init);
}

TEST(TrainTest, LossDecreasesAndIsDeterministic) {
  std::mt19937_64 rng(9);
  const auto data = testing::RandomDataset(6, 3, 5, 8, rng);
  TrainConfig cfg;
  cfg.steps = 200;
  cfg.learning_rate = 0.05;
  cfg.seed = 4;
  cfg.window = 1;
  const TrainResult a = TrainPredictors(data, 6, cfg);
  EXPECT_LT(a.final_loss.Total(), a.initial_loss.Total());
  const TrainResult b = TrainPredictors(data, 6, cfg);
  EXPECT_EQ(a.model.Serialize(), b.model.Serialize());
  EXPECT_DOUBLE_EQ(a.joint_loss, a.final_loss.Total());
}

TEST(TrainTest, PlantedModelRecovered) {
  const auto generator = ProsodyPredictor::Random(6, 1, 2, 11, 0.5);
  const auto data = testing::PlantedDataset(generator, 30, 10, 12);
  EXPECT_EQ(EvaluatePredictorLoss(generator, data).Total(), 0.0);
  TrainConfig cfg;
  cfg.steps = 5000;
  cfg.learning_rate = 0.2;
  cfg.window = 1;
  const TrainResult r = TrainPredictors(data, 6, cfg);
  EXPECT_LE(r.final_loss.Total(), 1e-3);
}

TEST(TrainTest, Errors) {
  TrainConfig cfg;
  EXPECT_THROW(TrainPredictors({}, 4, cfg), ValidationError);
  std::mt19937_64 rng(10);
  auto data = testing::RandomDataset(4, 1, 2, 4, rng);
  data[0].targets.pitch[0] = INFINITY;
  EXPECT_THROW(TrainPredictors(data, 4, cfg), ValidationError);
  data = testing::RandomDataset(4, 1, 2, 4, rng);
  cfg.learning_rate = 1e6;
  cfg.steps = 100;
  EXPECT_THROW(TrainPredictors(data, 4, cfg), ValidationError);
}

TEST(TrainTest, DecoderHookFeedsJointLoss) {
  std::mt19937_64 rng(13);
  auto data = testing::RandomDataset(5, 2, 2, 4, rng);
  MelConfig mel_cfg;
  mel_cfg.n_mels = 8;
  for (auto& ex : data) {
    MelFrames mel;
    mel.config = mel_cfg;
    mel.n_mels = 8;
    std::vector<int> d(ex.ids.size(), 2);
    mel.n_frames = 2 * ex.ids.size();
    mel.values.assign(mel.n_frames * 8, -1.0);
    ex.mel = mel;
    ex.targets.durations.assign(ex.ids.size(), 2.0);
  }
  TrainConfig cfg;
  cfg.steps = 10;
  const TrainResult r = TrainPredictors(data, 5, cfg, LinearMelDecoderLoss(5, 4, 1));
  EXPECT_GT(r.decoder_loss, 0.0);
  EXPECT_DOUBLE_EQ(r.joint_loss, JointLoss(r.final_loss.duration, r.final_loss.pitch,
                                           r.final_loss.energy, r.decoder_loss));
}

TEST(ModelIoTest, BinaryRoundTrip) {
  const auto m = ProsodyPredictor::Random(7, 2, 3, 5, 0.4);
  const std::string bytes = m.Serialize();
  EXPECT_EQ(bytes.substr(0, 8), std::string("THFPROS\0", 8));
  const auto back = ProsodyPredictor::Deserialize(bytes);
  EXPECT_EQ(back, m);
  EXPECT_EQ(back.Serialize(), bytes);
  testing::TempDir dir;
  m.Save(dir.File("m.bin"));
  EXPECT_EQ(ProsodyPredictor::Load(dir.File("m.bin")), m);
  EXPECT_THROW(ProsodyPredictor::Deserialize(bytes.substr(0, bytes.size() - 3)), Error);
  std::string wrong = bytes;
  wrong[0] = 'X';
  EXPECT_THROW(ProsodyPredictor::Deserialize(wrong), Error);
}

}  // namespace
}  // namespace thaifront
