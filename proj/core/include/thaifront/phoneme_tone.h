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

// Phoneme-tone value types shared by the annotation format, the G2P engine
// and the token encoder.

#ifndef THAIFRONT_PHONEME_TONE_H_
#define THAIFRONT_PHONEME_TONE_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace thaifront {

// The five lexical tones. The numeric value is the on-disk tone digit.
enum class Tone : int { kMid = 0, kLow = 1, kFalling = 2, kHigh = 3, kRising = 4 };

inline constexpr std::array<Tone, 5> kAllTones = {
    Tone::kMid, Tone::kLow, Tone::kFalling, Tone::kHigh, Tone::kRising};

std::string_view ToneName(Tone tone);
std::optional<Tone> ToneFromName(std::string_view name);
std::optional<Tone> ToneFromDigit(char digit);
inline char ToneDigit(Tone tone) { return static_cast<char>('0' + static_cast<int>(tone)); }

struct Syllable {
  std::vector<std::string> phonemes;
  Tone tone = Tone::kMid;

  bool operator==(const Syllable&) const = default;
};

struct PhonemeToneSequence {
  std::vector<Syllable> syllables;

  std::size_t PhonemeCount() const;
  bool operator==(const PhonemeToneSequence&) const = default;
};

// A prosodic pause between words of an utterance.
struct Pause {
  bool operator==(const Pause&) const = default;
};

using UtteranceItem = std::variant<Syllable, Pause>;
using Utterance = std::vector<UtteranceItem>;

// Every IPA symbol the rule engine can emit.
const std::vector<std::string>& ThaiIpaInventory();
bool IsRegisteredPhoneme(std::string_view phoneme);

// Throws ValidationError unless the sequence is non-empty, every syllable has
// at least one phoneme and every phoneme is in the registered inventory.
void ValidatePhonemeToneSequence(const PhonemeToneSequence& seq);

// "k aː 0 . n a m 3". The syllable field of the phoneme-tone TSV format.
std::string RenderSyllables(const PhonemeToneSequence& seq);
std::string RenderUtterance(const Utterance& utterance);

// Literal used for a pause inside a rendered utterance.
inline constexpr std::string_view kPauseGroup = "<pause>";

}  // namespace thaifront

#endif  // THAIFRONT_PHONEME_TONE_H_
