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

#include "thaifront/audio_features.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "real_fft.h"
#include "thaifront/error.h"

namespace thaifront {

void ValidateMelConfig(const MelConfig& cfg) {
  if (cfg.sample_rate <= 0 || cfg.fft_size <= 0 || cfg.hop <= 0 || cfg.win <= 0 ||
      cfg.n_mels <= 0) {
    throw ValidationError("mel config sizes must be positive");
  }
  if (cfg.win > cfg.fft_size) throw ValidationError("window longer than the FFT");
  if (!(cfg.fmin >= 0.0 && cfg.fmin < cfg.fmax && cfg.fmax <= cfg.sample_rate / 2.0)) {
    throw ValidationError("mel range must satisfy 0 <= fmin < fmax <= rate / 2");
  }
}

std::size_t FrameCount(std::size_t n_samples, const MelConfig& cfg) {
  const auto win = static_cast<std::size_t>(cfg.win);
  if (n_samples < win) {
    throw ValidationError("signal of " + std::to_string(n_samples) +
                          " samples is shorter than one window");
  }
  return 1 + (n_samples - win) / static_cast<std::size_t>(cfg.hop);
}

std::vector<double> HannWindow(int win) {
  std::vector<double> w(static_cast<std::size_t>(win));
  for (int n = 0; n < win; ++n) {
    w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / win);
  }
  return w;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<std::vector<double>> MelFilterbank(const MelConfig& cfg) {
  ValidateMelConfig(cfg);
  const std::size_t bins = static_cast<std::size_t>(cfg.fft_size) / 2 + 1;
  const double bin_hz = static_cast<double>(cfg.sample_rate) / cfg.fft_size;
  const double mel_lo = HzToMel(cfg.fmin);
  const double mel_hi = HzToMel(cfg.fmax);
  std::vector<double> edges(static_cast<std::size_t>(cfg.n_mels) + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (edges.size() - 1));
  }
  std::vector<std::vector<double>> bank(cfg.n_mels, std::vector<double>(bins, 0.0));
  for (int m = 0; m < cfg.n_mels; ++m) {
    const double lo = edges[m];
    const double mid = edges[m + 1];
    const double hi = edges[m + 2];
    double sum = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = k * bin_hz;
      const double w = std::max(0.0, std::min((f - lo) / (mid - lo), (hi - f) / (hi - mid)));
      bank[m][k] = w;
      sum += w;
    }
    if (sum > 0.0) {
      for (double& w : bank[m]) w /= sum;
    } else {
      const auto nearest = static_cast<std::size_t>(std::lround(mid / bin_hz));
      bank[m][std::min(nearest, bins - 1)] = 1.0;
    }
  }
  return bank;
}

MelFrames MelSpectrogram(const Waveform& w, const MelConfig& cfg) {
  ValidateMelConfig(cfg);
  ValidateWaveform(w);
  if (w.sample_rate != cfg.sample_rate) {
    throw ValidationError("waveform rate " + std::to_string(w.sample_rate) +
                          " differs from mel config rate " + std::to_string(cfg.sample_rate));
  }
  const std::size_t n_frames = FrameCount(w.samples.size(), cfg);
  const auto bank = MelFilterbank(cfg);
  const auto window = HannWindow(cfg.win);
  internal::RealFft fft(static_cast<std::size_t>(cfg.fft_size));

  MelFrames out;
  out.n_frames = n_frames;
  out.n_mels = static_cast<std::size_t>(cfg.n_mels);
  out.config = cfg;
  out.values.resize(n_frames * out.n_mels);
  std::vector<double> frame(window.size());
  std::vector<double> mag(fft.bins());
  for (std::size_t t = 0; t < n_frames; ++t) {
    const std::size_t start = t * static_cast<std::size_t>(cfg.hop);
    for (std::size_t n = 0; n < window.size(); ++n) frame[n] = w.samples[start + n] * window[n];
    fft.Magnitude(frame.data(), frame.size(), mag.data());
    for (std::size_t m = 0; m < out.n_mels; ++m) {
      double e = 0.0;
      for (std::size_t k = 0; k < mag.size(); ++k) e += bank[m][k] * mag[k];
      out.values[t * out.n_mels + m] = std::log(std::max(e, kLogFloor));
    }
  }
  return out;
}

namespace {

// Below this frame energy the frame is treated as silent.
constexpr double kSilenceEnergy = 1e-10;
constexpr double kOctaveGuard = 0.9;

double FramePitch(const float* x, std::size_t n, int rate, const PitchConfig& cfg) {
  const auto min_lag = static_cast<std::size_t>(std::floor(rate / cfg.fmax));
  const auto max_lag = std::min(static_cast<std::size_t>(std::ceil(rate / cfg.fmin)), n / 2);
  if (min_lag < 1 || min_lag + 2 > max_lag) return 0.0;

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += x[i];
  mean /= static_cast<double>(n);
  std::vector<double> d(n);
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = x[i] - mean;
    energy += d[i] * d[i];
  }
  if (energy / static_cast<double>(n) < kSilenceEnergy) return 0.0;

  // Prefix sums of squares give both normalisation terms in O(1) per lag.
  std::vector<double> sq(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) sq[i + 1] = sq[i] + d[i] * d[i];
  std::vector<double> r(max_lag + 2, 0.0);
  for (std::size_t lag = min_lag - 1; lag <= max_lag + 1 && lag < n; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) acc += d[i] * d[i + lag];
    const double norm = std::sqrt(sq[n - lag] * (sq[n] - sq[lag]));
    r[lag] = norm > 0.0 ? acc / norm : 0.0;
  }
  double best = -1.0;
  for (std::size_t lag = min_lag; lag <= max_lag; ++lag) best = std::max(best, r[lag]);
  if (best < cfg.voicing_threshold) return 0.0;

  // The shortest lag that is a local peak close to the global best avoids
  // picking a multiple of the true period.
  std::size_t pick = 0;
  for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
    if (r[lag] >= kOctaveGuard * best && r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1]) {
      pick = lag;
      break;
    }
  }
  if (pick == 0) return 0.0;
  double offset = 0.0;
  const double denom = r[pick - 1] - 2.0 * r[pick] + r[pick + 1];
  if (denom < 0.0) offset = 0.5 * (r[pick - 1] - r[pick + 1]) / denom;
  const double f0 = rate / (static_cast<double>(pick) + offset);
  return std::clamp(f0, cfg.fmin, cfg.fmax);
}

}  // namespace

std::vector<double> ExtractPitch(const Waveform& w, const MelConfig& mel_cfg,
                                 const PitchConfig& cfg) {
  ValidateWaveform(w);
  if (w.sample_rate < 8000) throw ValidationError("pitch tracking needs at least 8 kHz audio");
  if (!(cfg.fmin > 0.0 && cfg.fmin < cfg.fmax)) throw ValidationError("bad pitch range");
  const std::size_t n_frames = FrameCount(w.samples.size(), mel_cfg);
  std::vector<double> f0(n_frames);
  for (std::size_t t = 0; t < n_frames; ++t) {
    f0[t] = FramePitch(w.samples.data() + t * static_cast<std::size_t>(mel_cfg.hop),
                       static_cast<std::size_t>(mel_cfg.win), w.sample_rate, cfg);
  }
  return f0;
}

std::vector<double> ExtractEnergy(const MelFrames& mel) {
  std::vector<double> e(mel.n_frames);
  for (std::size_t t = 0; t < mel.n_frames; ++t) {
    double acc = 0.0;
    for (std::size_t m = 0; m < mel.n_mels; ++m) {
      const double lin = std::exp(mel.at(t, m));
      acc += lin * lin;
    }
    e[t] = mel.n_mels == 0 ? 0.0 : std::sqrt(acc / static_cast<double>(mel.n_mels));
  }
  return e;
}

std::vector<int> PhonemeDurations(std::size_t n_phonemes, std::size_t n_frames,
                                  const std::optional<std::vector<AlignmentRow>>& alignment) {
  if (n_phonemes == 0) throw ValidationError("need at least one phoneme");
  if (alignment) {
    if (alignment->size() != n_phonemes) {
      throw ValidationError("alignment has " + std::to_string(alignment->size()) +
                            " rows for " + std::to_string(n_phonemes) + " phonemes");
    }
    std::vector<int> d;
    std::size_t sum = 0;
    for (const auto& row : *alignment) {
      if (row.frames < 0) throw ValidationError("negative frame count in alignment");
      d.push_back(row.frames);
      sum += static_cast<std::size_t>(row.frames);
    }
    if (sum != n_frames) {
      throw ValidationError("alignment covers " + std::to_string(sum) + " frames, audio has " +
                            std::to_string(n_frames));
    }
    return d;
  }
  if (n_frames < n_phonemes) {
    throw ValidationError("fewer frames than phonemes for a uniform split");
  }
  std::vector<int> d(n_phonemes, static_cast<int>(n_frames / n_phonemes));
  for (std::size_t i = 0; i < n_frames % n_phonemes; ++i) ++d[i];
  return d;
}

std::vector<double> StyleVector(const MelFrames& mel, std::size_t dim) {
  if (mel.n_frames < 2) throw ValidationError("style vector needs at least two frames");
  if (dim == 0 || dim % 2 != 0) throw ValidationError("style dim must be even and positive");
  const std::size_t groups = dim / 2;
  if (groups > mel.n_mels) throw ValidationError("style dim exceeds twice the mel band count");
  std::vector<double> style(dim, 0.0);
  std::vector<double> per_frame(mel.n_frames);
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t lo = g * mel.n_mels / groups;
    const std::size_t hi = (g + 1) * mel.n_mels / groups;
    double mean = 0.0;
    for (std::size_t t = 0; t < mel.n_frames; ++t) {
      double acc = 0.0;
      for (std::size_t m = lo; m < hi; ++m) acc += mel.at(t, m);
      per_frame[t] = acc / static_cast<double>(hi - lo);
      mean += per_frame[t];
    }
    mean /= static_cast<double>(mel.n_frames);
    double var = 0.0;
    for (double v : per_frame) var += (v - mean) * (v - mean);
    style[g] = mean;
    style[groups + g] = std::sqrt(var / static_cast<double>(mel.n_frames));
  }
  return style;
}

FeatureRecord MakeFeatureRecord(const MelFrames& mel, const std::vector<double>& pitch,
                                const std::vector<double>& energy,
                                const std::vector<int>& durations,
                                const std::vector<double>& style) {
  auto column = [](const auto& v) {
    FeatureSection s;
    s.rows = v.size();
    s.cols = 1;
    for (auto x : v) s.data.push_back(static_cast<float>(x));
    return s;
  };
  FeatureRecord rec;
  FeatureSection m;
  m.rows = mel.n_frames;
  m.cols = mel.n_mels;
  m.data.assign(mel.values.begin(), mel.values.end());
  rec["mel"] = std::move(m);
  rec["pitch"] = column(pitch);
  rec["energy"] = column(energy);
  rec["durations"] = column(durations);
  FeatureSection s = column(style);
  s.rows = 1;
  s.cols = style.size();
  rec["style"] = std::move(s);
  return rec;
}

}  // namespace thaifront
