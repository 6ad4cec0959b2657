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

#include "thaifront/phoneme_tone.h"

#include <algorithm>

#include "thaifront/error.h"

namespace thaifront {

std::string_view ToneName(Tone tone) {
  switch (tone) {
    case Tone::kMid: return "mid";
    case Tone::kLow: return "low";
    case Tone::kFalling: return "falling";
    case Tone::kHigh: return "high";
    case Tone::kRising: return "rising";
  }
  return "?";
}

std::optional<Tone> ToneFromName(std::string_view name) {
  for (Tone t : kAllTones) {
    if (ToneName(t) == name) return t;
  }
  return std::nullopt;
}

std::optional<Tone> ToneFromDigit(char digit) {
  if (digit < '0' || digit > '4') return std::nullopt;
  return static_cast<Tone>(digit - '0');
}

std::size_t PhonemeToneSequence::PhonemeCount() const {
  std::size_t n = 0;
  for (const auto& s : syllables) n += s.phonemes.size();
  return n;
}

const std::vector<std::string>& ThaiIpaInventory() {
  static const std::vector<std::string> inventory = [] {
    std::vector<std::string> v = {
        // consonants (onsets and codas)
        "p", "pʰ", "b", "t", "tʰ", "d", "k", "kʰ", "ʔ", "tɕ", "tɕʰ", "m", "n",
        "ŋ", "f", "s", "h", "j", "w", "r", "l",
        // monophthongs
        "a", "aː", "i", "iː", "ɯ", "ɯː", "u", "uː", "e", "eː", "ɛ", "ɛː", "o",
        "oː", "ɔ", "ɔː", "ɤ", "ɤː",
        // diphthongs
        "ia", "iːa", "ɯa", "ɯːa", "ua", "uːa"};
    std::sort(v.begin(), v.end());
    return v;
  }();
  return inventory;
}

bool IsRegisteredPhoneme(std::string_view phoneme) {
  const auto& inv = ThaiIpaInventory();
  return std::binary_search(inv.begin(), inv.end(), phoneme);
}

void ValidatePhonemeToneSequence(const PhonemeToneSequence& seq) {
  if (seq.syllables.empty()) {
    throw ValidationError("phoneme-tone sequence has no syllables");
  }
  for (const auto& syl : seq.syllables) {
    if (syl.phonemes.empty()) throw ValidationError("syllable has no phonemes");
    for (const auto& ph : syl.phonemes) {
      if (!IsRegisteredPhoneme(ph)) {
        throw ValidationError("phoneme '" + ph + "' is not in the Thai IPA inventory");
      }
    }
  }
}

namespace {

void AppendSyllable(const Syllable& syl, std::string* out) {
  for (const auto& ph : syl.phonemes) {
    out->append(ph);
    out->push_back(' ');
  }
  out->push_back(ToneDigit(syl.tone));
}

}  // namespace

std::string RenderSyllables(const PhonemeToneSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.syllables.size(); ++i) {
    if (i > 0) out += " . ";
    AppendSyllable(seq.syllables[i], &out);
  }
  return out;
}

std::string RenderUtterance(const Utterance& utterance) {
  std::string out;
  for (std::size_t i = 0; i < utterance.size(); ++i) {
    if (i > 0) out += " . ";
    if (const auto* syl = std::get_if<Syllable>(&utterance[i])) {
      AppendSyllable(*syl, &out);
    } else {
      out += kPauseGroup;
    }
  }
  return out;
}

}  // namespace thaifront
