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

#include <cmath>
#include <cstdint>

#include "thaifront/error.h"

namespace thaifront {

namespace {

std::uint32_t ReadU32(std::string_view b, std::size_t off) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[off + i]);
  return v;
}

std::uint16_t ReadU16(std::string_view b, std::size_t off) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[off]) |
                                    (static_cast<unsigned char>(b[off + 1]) << 8));
}

void PutU32(std::string* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutU16(std::string* out, std::uint16_t v) {
  out->push_back(static_cast<char>(v & 0xff));
  out->push_back(static_cast<char>(v >> 8));
}

}  // namespace

void ValidateWaveform(const Waveform& w) {
  if (w.sample_rate <= 0) throw ValidationError("sample rate must be positive");
  for (float s : w.samples) {
    if (!std::isfinite(s)) throw ValidationError("waveform has non-finite samples");
  }
}

Waveform ParseWav(std::string_view b) {
  if (b.size() < 12 || b.substr(0, 4) != "RIFF" || b.substr(8, 4) != "WAVE") {
    throw ParseError("not a RIFF/WAVE file");
  }
  std::size_t off = 12;
  bool have_fmt = false;
  Waveform w;
  while (off + 8 <= b.size()) {
    const std::string_view id = b.substr(off, 4);
    const std::size_t size = ReadU32(b, off + 4);
    const std::size_t body = off + 8;
    if (body + size > b.size()) throw ParseError("truncated WAV chunk");
    if (id == "fmt ") {
      if (size < 16) throw ParseError("short fmt chunk");
      const std::uint16_t format = ReadU16(b, body);
      const std::uint16_t channels = ReadU16(b, body + 2);
      const std::uint32_t rate = ReadU32(b, body + 4);
      const std::uint16_t bits = ReadU16(b, body + 14);
      if (format != 1) throw ParseError("only PCM WAV is supported");
      if (channels != 1) {
        throw ParseError("expected mono audio, got " + std::to_string(channels) + " channels");
      }
      if (bits != 16) throw ParseError("only 16-bit samples are supported");
      if (rate == 0 || rate > 1000000) throw ParseError("bad sample rate");
      w.sample_rate = static_cast<int>(rate);
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw ParseError("data chunk before fmt chunk");
      if (size % 2 != 0) throw ParseError("odd data chunk size");
      w.samples.resize(size / 2);
      for (std::size_t i = 0; i < w.samples.size(); ++i) {
        const auto v = static_cast<std::int16_t>(ReadU16(b, body + 2 * i));
        w.samples[i] = static_cast<float>(v) / 32768.0f;
      }
      return w;
    }
    off = body + size + (size & 1);
  }
  throw ParseError("WAV file has no data chunk");
}

std::string SerializeWav(const Waveform& w) {
  ValidateWaveform(w);
  const auto data_bytes = static_cast<std::uint32_t>(w.samples.size() * 2);
  std::string out = "RIFF";
  PutU32(&out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(&out, 16);
  PutU16(&out, 1);
  PutU16(&out, 1);
  PutU32(&out, static_cast<std::uint32_t>(w.sample_rate));
  PutU32(&out, static_cast<std::uint32_t>(w.sample_rate) * 2);
  PutU16(&out, 2);
  PutU16(&out, 16);
  out += "data";
  PutU32(&out, data_bytes);
  for (float s : w.samples) {
    const double scaled = std::round(static_cast<double>(s) * 32768.0);
    const double clamped = std::fmin(32767.0, std::fmax(-32768.0, scaled));
    PutU16(&out, static_cast<std::uint16_t>(static_cast<std::int16_t>(clamped)));
  }
  return out;
}

Waveform ReadWav(const std::string& path) {
  try {
    return ParseWav(ReadFile(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void WriteWav(const std::string& path, const Waveform& w) { WriteFile(path, SerializeWav(w)); }

}  // namespace thaifront
