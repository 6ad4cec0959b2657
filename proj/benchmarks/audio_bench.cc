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

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thaifront/audio_features.h"
#include "thaifront/evaluation.h"
#include "thaifront/prosody_model.h"

namespace thaifront {
namespace {

Waveform Tone(int rate, double seconds) {
  Waveform w;
  w.sample_rate = rate;
  w.samples.resize(static_cast<std::size_t>(rate * seconds));
  std::mt19937_64 rng(1);
  std::normal_distribution<float> noise(0.0f, 0.01f);
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    const double t = static_cast<double>(i) / rate;
    w.samples[i] = static_cast<float>(0.3 * std::sin(2 * std::numbers::pi * 180.0 * t)) + noise(rng);
  }
  return w;
}

void BM_MelSpectrogram(benchmark::State& state) {
  const Waveform w = Tone(24000, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(MelSpectrogram(w));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * w.samples.size()));
}
BENCHMARK(BM_MelSpectrogram)->Arg(1)->Arg(5);

void BM_Pitch(benchmark::State& state) {
  const Waveform w = Tone(24000, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(ExtractPitch(w));
}
BENCHMARK(BM_Pitch);

void BM_Stoi(benchmark::State& state) {
  const Waveform clean = Tone(static_cast<int>(state.range(0)), 3.0);
  Waveform noisy = clean;
  std::mt19937_64 rng(2);
  std::normal_distribution<float> g(0.0f, 0.1f);
  for (float& s : noisy.samples) s += g(rng);
  for (auto _ : state) benchmark::DoNotOptimize(Stoi(clean, noisy));
}
BENCHMARK(BM_Stoi)->Arg(10000)->Arg(16000);

void BM_TrainStep(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<ProsodyExample> data(16);
  for (auto& ex : data) {
    ex.ids.resize(40);
    for (int& id : ex.ids) id = static_cast<int>(rng() % 60);
    ex.style.assign(kDefaultStyleDim, 0.1);
    ex.targets.durations.assign(40, 1.0);
    ex.targets.pitch.assign(40, 0.5);
    ex.targets.energy.assign(40, -0.5);
  }
  const ProsodyPredictor model = ProsodyPredictor::Random(60, 2, kDefaultStyleDim, 4, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(PredictorGradient(model, data));
}
BENCHMARK(BM_TrainStep);

}  // namespace
}  // namespace thaifront
