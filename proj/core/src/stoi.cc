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

// STOI following the reference algorithm of Taal et al.: silent frames of
// the clean signal are dropped, both signals go through a one-third-octave
// filterbank, and short-time envelopes are compared by clipped, normalised
// correlation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "real_fft.h"
#include "thaifront/error.h"
#include "thaifront/evaluation.h"

namespace thaifront {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Zero crossings of the sinc kernel on each side, at the output cutoff.
constexpr int kSincZeros = 16;

// Hann window without its zero end points, as in numpy.hanning(n + 2)[1:-1].
std::vector<double> InnerHann(int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (i + 1) / (n + 1));
  }
  return w;
}

double Sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Drops frames whose clean-signal energy lies more than `range_db` below the
// loudest frame, then overlap-adds what is left.
void RemoveSilentFrames(const std::vector<double>& x, const std::vector<double>& y,
                        const StoiConfig& cfg, std::vector<double>* x_out,
                        std::vector<double>* y_out) {
  const auto len = static_cast<std::size_t>(cfg.frame_length);
  const auto hop = static_cast<std::size_t>(cfg.frame_length / 2);
  const auto w = InnerHann(cfg.frame_length);
  std::vector<std::size_t> starts;
  std::vector<double> energy;
  for (std::size_t s = 0; s + len <= x.size(); s += hop) {
    double acc = 0.0;
    for (std::size_t n = 0; n < len; ++n) acc += (w[n] * x[s + n]) * (w[n] * x[s + n]);
    starts.push_back(s);
    energy.push_back(20.0 * std::log10(std::sqrt(acc) + kEps));
  }
  x_out->clear();
  y_out->clear();
  if (starts.empty()) return;
  const double top = *std::max_element(energy.begin(), energy.end());
  std::size_t kept = 0;
  for (std::size_t f = 0; f < starts.size(); ++f) {
    if (top - cfg.dynamic_range_db - energy[f] >= 0.0) continue;
    const std::size_t out = kept * hop;
    x_out->resize(out + len, 0.0);
    y_out->resize(out + len, 0.0);
    for (std::size_t n = 0; n < len; ++n) {
      (*x_out)[out + n] += w[n] * x[starts[f] + n];
      (*y_out)[out + n] += w[n] * y[starts[f] + n];
    }
    ++kept;
  }
}

// Band energies of every frame: [frames][bands], magnitudes (not squared).
std::vector<std::vector<double>> ThirdOctaveEnvelopes(const std::vector<double>& x,
                                                      const StoiConfig& cfg,
                                                      const std::vector<std::vector<int>>& bands) {
  const auto len = static_cast<std::size_t>(cfg.frame_length);
  const auto hop = static_cast<std::size_t>(cfg.hop);
  const auto w = InnerHann(cfg.frame_length);
  internal::RealFft fft(static_cast<std::size_t>(cfg.fft_size));
  std::vector<double> frame(len);
  std::vector<double> mag(fft.bins());
  std::vector<std::vector<double>> env;
  // Frames start strictly before len(x) - frame_length, as in the reference.
  for (std::size_t s = 0; s + len < x.size(); s += hop) {
    for (std::size_t n = 0; n < len; ++n) frame[n] = w[n] * x[s + n];
    fft.Magnitude(frame.data(), len, mag.data());
    std::vector<double> row(bands.size());
    for (std::size_t b = 0; b < bands.size(); ++b) {
      double acc = 0.0;
      for (int k = bands[b][0]; k < bands[b][1]; ++k) acc += mag[k] * mag[k];
      row[b] = std::sqrt(acc);
    }
    env.push_back(std::move(row));
  }
  return env;
}

// [low_bin, high_bin) per band, edges snapped to the nearest FFT bin.
std::vector<std::vector<int>> ThirdOctaveBands(const StoiConfig& cfg) {
  const int bins = cfg.fft_size / 2 + 1;
  const double bin_hz = static_cast<double>(cfg.sample_rate) / cfg.fft_size;
  auto nearest = [&](double hz) {
    return std::clamp(static_cast<int>(std::lround(hz / bin_hz)), 0, bins - 1);
  };
  std::vector<std::vector<int>> bands;
  for (int k = 0; k < cfg.num_bands; ++k) {
    const double lo = cfg.min_freq * std::pow(2.0, (2.0 * k - 1.0) / 6.0);
    const double hi = cfg.min_freq * std::pow(2.0, (2.0 * k + 1.0) / 6.0);
    bands.push_back({nearest(lo), nearest(hi)});
  }
  return bands;
}

}  // namespace

void ValidateStoiConfig(const StoiConfig& cfg) {
  if (cfg.sample_rate <= 0 || cfg.frame_length <= 1 || cfg.fft_size < cfg.frame_length ||
      cfg.hop <= 0 || cfg.num_bands <= 0 || cfg.segment_frames <= 0 || cfg.min_freq <= 0.0 ||
      cfg.dynamic_range_db <= 0.0) {
    throw ValidationError("invalid STOI configuration");
  }
  const double top = cfg.min_freq * std::pow(2.0, (2.0 * (cfg.num_bands - 1) + 1.0) / 6.0);
  if (top > cfg.sample_rate / 2.0) throw ValidationError("STOI bands exceed the Nyquist rate");
}

std::vector<double> Resample(const std::vector<double>& x, int from_rate, int to_rate) {
  if (from_rate <= 0 || to_rate <= 0) throw ValidationError("sample rates must be positive");
  if (from_rate == to_rate) return x;
  const double ratio = static_cast<double>(to_rate) / from_rate;
  // Cutoff relative to the input Nyquist rate.
  const double cutoff = std::min(1.0, ratio);
  const double half_width = kSincZeros / cutoff;
  const auto n_out = static_cast<std::size_t>(
      std::ceil(static_cast<double>(x.size()) * to_rate / from_rate));
  std::vector<double> y(n_out, 0.0);
  const auto n_in = static_cast<std::ptrdiff_t>(x.size());
  for (std::size_t j = 0; j < n_out; ++j) {
    const double t = static_cast<double>(j) * from_rate / to_rate;
    const auto lo = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::ceil(t - half_width)));
    const auto hi = std::min<std::ptrdiff_t>(n_in - 1, static_cast<std::ptrdiff_t>(std::floor(t + half_width)));
    double acc = 0.0;
    for (std::ptrdiff_t i = lo; i <= hi; ++i) {
      const double dt = t - static_cast<double>(i);
      const double window = 0.5 + 0.5 * std::cos(std::numbers::pi * dt / half_width);
      acc += x[i] * cutoff * Sinc(cutoff * dt) * window;
    }
    y[j] = acc;
  }
  return y;
}

double Stoi(const Waveform& clean, const Waveform& processed, const StoiConfig& cfg) {
  ValidateStoiConfig(cfg);
  ValidateWaveform(clean);
  ValidateWaveform(processed);
  if (clean.sample_rate != processed.sample_rate) {
    throw ValidationError("clean and processed signals differ in sample rate");
  }
  if (clean.samples.size() != processed.samples.size()) {
    throw ValidationError("clean and processed signals differ in length");
  }
  if (clean.sample_rate < cfg.sample_rate) {
    throw ValidationError("STOI needs audio sampled at " + std::to_string(cfg.sample_rate) +
                          " Hz or more");
  }
  std::vector<double> x(clean.samples.begin(), clean.samples.end());
  std::vector<double> y(processed.samples.begin(), processed.samples.end());
  x = Resample(x, clean.sample_rate, cfg.sample_rate);
  y = Resample(y, processed.sample_rate, cfg.sample_rate);

  std::vector<double> xs;
  std::vector<double> ys;
  RemoveSilentFrames(x, y, cfg, &xs, &ys);
  const auto bands = ThirdOctaveBands(cfg);
  const auto xe = ThirdOctaveEnvelopes(xs, cfg, bands);
  const auto ye = ThirdOctaveEnvelopes(ys, cfg, bands);
  const auto n = static_cast<std::size_t>(cfg.segment_frames);
  if (xe.size() < n) {
    throw ValidationError("signal too short for STOI: " + std::to_string(xe.size()) +
                          " frames, need " + std::to_string(n));
  }

  const double clip = std::pow(10.0, -cfg.beta_db / 20.0);
  double total = 0.0;
  std::size_t count = 0;
  std::vector<double> xv(n);
  std::vector<double> yv(n);
  for (std::size_t end = n; end <= xe.size(); ++end) {
    for (std::size_t b = 0; b < bands.size(); ++b) {
      double nx = 0.0;
      double ny = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        xv[i] = xe[end - n + i][b];
        yv[i] = ye[end - n + i][b];
        nx += xv[i] * xv[i];
        ny += yv[i] * yv[i];
      }
      const double scale = std::sqrt(nx) / (std::sqrt(ny) + kEps);
      double mx = 0.0;
      double my = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        yv[i] = std::min(yv[i] * scale, xv[i] * (1.0 + clip));
        mx += xv[i];
        my += yv[i];
      }
      mx /= static_cast<double>(n);
      my /= static_cast<double>(n);
      double sxy = 0.0;
      double sxx = 0.0;
      double syy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double dx = xv[i] - mx;
        const double dy = yv[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
      }
      total += sxy / ((std::sqrt(sxx) + kEps) * (std::sqrt(syy) + kEps));
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

}  // namespace thaifront
