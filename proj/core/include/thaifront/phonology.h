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

// Thai syllable parsing, tone rules and rule-based grapheme-to-phoneme
// conversion.
//
// Words are parsed left to right into syllables by matching vowel templates
// around an initial. Candidates with more written vowel letters win, then the
// candidate that consumes more text; the parser backtracks when a choice
// leaves an unparseable remainder. The tone of each syllable is read from a
// data table indexed by (initial class, liveness, vowel length, tone mark).
// Words the templates cannot read go to an exception dictionary, then to an
// optional fallback hook.

#ifndef THAIFRONT_PHONOLOGY_H_
#define THAIFRONT_PHONOLOGY_H_

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "thaifront/corpus_io.h"
#include "thaifront/error.h"
#include "thaifront/phoneme_tone.h"

namespace thaifront {

enum class ConsonantClass { kMid = 0, kHigh = 1, kLow = 2 };
enum class Liveness { kLive = 0, kDead = 1 };
enum class VowelLength { kShort = 0, kLong = 1 };
enum class ToneMark { kNone = 0, kMaiEk, kMaiTho, kMaiTri, kMaiChattawa };

std::string_view ConsonantClassName(ConsonantClass c);
std::string_view LivenessName(Liveness l);
std::string_view VowelLengthName(VowelLength l);
std::string_view ToneMarkName(ToneMark m);

bool IsThaiConsonant(char32_t ch);
// Throws ValidationError for anything but the 44 consonant letters.
ConsonantClass GetConsonantClass(char32_t ch);
ConsonantClass GetConsonantClass(std::string_view utf8_letter);

struct SyllableStructure {
  // Exact characters this syllable covers, silent letters included.
  std::string surface;
  std::string onset_letters;
  std::vector<std::string> onset_phonemes;
  ConsonantClass onset_class = ConsonantClass::kMid;
  std::string vowel;
  VowelLength vowel_length = VowelLength::kLong;
  // Final consonant phoneme, written or implied by the vowel (ำ ใ ไ เ-า).
  std::optional<std::string> coda;
  bool coda_sonorant = false;
  ToneMark tone_mark = ToneMark::kNone;
  Liveness liveness = Liveness::kLive;

  std::vector<std::string> Phonemes() const;
};

// Live iff the coda is sonorant, or there is no coda and the vowel is long.
Liveness ComputeLiveness(const std::optional<std::string>& coda, bool coda_sonorant,
                         VowelLength length);

// Thrown when no template sequence covers the whole word.
class SyllableParseError : public Error {
 public:
  SyllableParseError(std::string word, std::size_t begin, std::size_t end);

  const std::string& word() const { return word_; }
  // Code point span [begin, end) of the unparsed remainder.
  std::size_t begin() const { return begin_; }
  std::size_t end() const { return end_; }

 private:
  std::string word_;
  std::size_t begin_;
  std::size_t end_;
};

// Tone grid plus multi-letter onset rules, loaded from the versioned rules
// TSV. Immutable after construction.
class ToneRules {
 public:
  struct OnsetRule {
    std::u32string letters;
    ConsonantClass onset_class;
    std::vector<std::string> phonemes;
  };

  static ToneRules Parse(std::string_view tsv);
  static ToneRules Load(const std::string& path);
  // The table compiled into the library from core/data/tone_rules.tsv.
  static const ToneRules& Default();

  // Canonical form: header, the 60 tone rows in grid order, then onset rows
  // longest first. Comments are not preserved.
  std::string Serialize() const;

  Tone Lookup(ConsonantClass c, Liveness l, VowelLength len, ToneMark m) const;
  Tone Determine(const SyllableStructure& s) const;

  const std::vector<OnsetRule>& onset_rules() const { return onset_rules_; }
  int version() const { return version_; }

 private:
  static constexpr std::size_t kCells = 3 * 2 * 2 * 5;
  static std::size_t CellIndex(ConsonantClass c, Liveness l, VowelLength len, ToneMark m);

  int version_ = 0;
  std::array<Tone, kCells> grid_{};
  std::vector<OnsetRule> onset_rules_;
};

inline constexpr int kToneRulesVersion = 1;

// Tone from the default rules table.
Tone DetermineTone(const SyllableStructure& s);

// Throws SyllableParseError when the word cannot be covered by templates and
// ValidationError for empty or non-NFC input.
std::vector<SyllableStructure> ParseSyllables(std::string_view word,
                                              const ToneRules& rules = ToneRules::Default());

// Phonemes and tones from the rule engine alone.
PhonemeToneSequence RulePronunciation(std::string_view word,
                                      const ToneRules& rules = ToneRules::Default());

using ExceptionDictionary = std::unordered_map<std::string, PhonemeToneSequence>;

// Most frequent pronunciation per word; ties keep the earliest line.
ExceptionDictionary BuildExceptionDictionary(const std::vector<PhonemeToneEntry>& entries);

using G2pFallback =
    std::function<std::optional<PhonemeToneSequence>(std::string_view word)>;

// Fallback that answers from an annotation list, most frequent reading first.
G2pFallback AnnotationFallback(const std::vector<PhonemeToneEntry>& annotations);

class UnresolvableWordError : public Error {
 public:
  explicit UnresolvableWordError(const std::string& word)
      : Error("cannot resolve pronunciation of '" + word + "'"), word_(word) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

enum class G2pSource { kException, kRules, kFallback };

class G2p {
 public:
  G2p(ToneRules rules, ExceptionDictionary exceptions, G2pFallback fallback = nullptr);

  // Exception hit, else rules, else fallback. Throws UnresolvableWordError.
  PhonemeToneSequence Convert(std::string_view word, G2pSource* source = nullptr) const;

  const ToneRules& rules() const { return rules_; }
  const ExceptionDictionary& exceptions() const { return exceptions_; }

 private:
  ToneRules rules_;
  ExceptionDictionary exceptions_;
  G2pFallback fallback_;
};

}  // namespace thaifront

#endif  // THAIFRONT_PHONOLOGY_H_
