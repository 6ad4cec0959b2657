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

// Acoustic feature extraction: log-mel spectrogram, autocorrelation pitch,
// mel-domain energy, phoneme durations and an utterance style vector. All
// frame-level features share one frame grid: frame t covers samples
// [t * hop, t * hop + win), with no padding.

#ifndef THAIFRONT_AUDIO_FEATURES_H_
#define THAIFRONT_AUDIO_FEATURES_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thaifront/corpus_io.h"

namespace thaifront {

struct Waveform {
  std::vector<float> samples;  // in [-1, 1]
  int sample_rate = 24000;
};

// Throws ValidationError on a non-positive rate or non-finite samples.
void ValidateWaveform(const Waveform& w);

// 16-bit PCM mono WAV. Anything else is rejected with ParseError.
Waveform ParseWav(std::string_view bytes);
std::string SerializeWav(const Waveform& w);
Waveform ReadWav(const std::string& path);
void WriteWav(const std::string& path, const Waveform& w);

struct MelConfig {
  int sample_rate = 24000;
  int fft_size = 1024;
  int hop = 256;
  int win = 1024;
  int n_mels = 80;
  double fmin = 0.0;
  double fmax = 12000.0;
  bool operator==(const MelConfig&) const = default;
};

inline constexpr double kLogFloor = 1e-5;

void ValidateMelConfig(const MelConfig& cfg);

// 1 + (n_samples - win) / hop. Throws ValidationError if n_samples < win.
std::size_t FrameCount(std::size_t n_samples, const MelConfig& cfg);

// Periodic Hann window of length cfg.win.
std::vector<double> HannWindow(int win);

// n_mels rows of fft_size / 2 + 1 weights. Triangles on the HTK mel scale,
// each row scaled to sum to 1; a band too narrow to touch any bin gets all of
// its weight on the bin nearest its centre.
std::vector<std::vector<double>> MelFilterbank(const MelConfig& cfg);

double HzToMel(double hz);
double MelToHz(double mel);

struct MelFrames {
  std::size_t n_frames = 0;
  std::size_t n_mels = 0;
  std::vector<double> values;  // row-major [n_frames x n_mels], natural log
  MelConfig config;

  double at(std::size_t t, std::size_t m) const { return values[t * n_mels + m]; }
  bool operator==(const MelFrames&) const = default;
};

// log(max(mel_filterbank * |STFT|, 1e-5)). The waveform rate must equal
// cfg.sample_rate.
MelFrames MelSpectrogram(const Waveform& w, const MelConfig& cfg = {});

struct PitchConfig {
  double fmin = 60.0;
  double fmax = 400.0;
  double voicing_threshold = 0.5;
  bool operator==(const PitchConfig&) const = default;
};

// Per-frame f0 in Hz, 0 where unvoiced. Requires a rate of at least 8 kHz.
std::vector<double> ExtractPitch(const Waveform& w, const MelConfig& mel_cfg = {},
                                 const PitchConfig& cfg = {});

// Per-frame RMS of the linear mel energies exp(log mel).
std::vector<double> ExtractEnergy(const MelFrames& mel);

// Frames per phoneme. With an alignment its row count must equal
// n_phonemes and its frames must sum to n_frames; otherwise frames are split
// evenly with the remainder going to the earliest phonemes.
std::vector<int> PhonemeDurations(std::size_t n_phonemes, std::size_t n_frames,
                                  const std::optional<std::vector<AlignmentRow>>& alignment =
                                      std::nullopt);

inline constexpr std::size_t kDefaultStyleDim = 32;

// Mel bands are split into dim / 2 contiguous groups. The first half of the
// vector holds each group's mean log energy, the second half the standard
// deviation over frames of the group's per-frame mean. Needs at least two
// frames, an even dim and dim / 2 <= n_mels.
std::vector<double> StyleVector(const MelFrames& mel, std::size_t dim = kDefaultStyleDim);

// Sections "mel", "pitch", "energy", "durations" and "style".
FeatureRecord MakeFeatureRecord(const MelFrames& mel, const std::vector<double>& pitch,
                                const std::vector<double>& energy,
                                const std::vector<int>& durations,
                                const std::vector<double>& style);

}  // namespace thaifront

#endif  // THAIFRONT_AUDIO_FEATURES_H_
