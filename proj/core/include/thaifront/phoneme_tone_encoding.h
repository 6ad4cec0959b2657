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

// Token ids for the acoustic model. Tone rides on the last phoneme of each
// syllable as a merged (phoneme, tone) token, so a syllable of n phonemes
// always encodes to n ids.

#ifndef THAIFRONT_PHONEME_TONE_ENCODING_H_
#define THAIFRONT_PHONEME_TONE_ENCODING_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thaifront/corpus_io.h"
#include "thaifront/phoneme_tone.h"

namespace thaifront {

enum class TokenKind { kSpecial, kBase, kMerged };

struct VocabToken {
  TokenKind kind = TokenKind::kSpecial;
  std::string text;     // "<pad>", "k", "aː#0"
  std::string phoneme;  // empty for specials
  Tone tone = Tone::kMid;
  bool operator==(const VocabToken&) const = default;
};

inline constexpr int kVocabVersion = 1;

class PhonemeVocab {
 public:
  static constexpr int kPadId = 0;
  static constexpr int kUnkId = 1;
  static constexpr int kPauseId = 2;
  static constexpr std::size_t kSpecialCount = 3;

  PhonemeVocab() = default;

  // Canonical id layout: specials, then base phonemes in byte order, then
  // merged tokens ordered by (phoneme, tone). Throws ValidationError for an
  // empty set or a phoneme containing whitespace or '#'.
  static PhonemeVocab FromPhonemes(const std::vector<std::string>& phonemes);

  std::optional<int> BaseId(std::string_view phoneme) const;
  std::optional<int> MergedId(std::string_view phoneme, Tone tone) const;
  const VocabToken& token(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  bool Contains(int id) const { return id >= 0 && static_cast<std::size_t>(id) < tokens_.size(); }

  std::size_t size() const { return tokens_.size(); }
  std::size_t base_count() const { return base_.size(); }
  std::size_t merged_count() const { return merged_.size(); }
  std::vector<std::string> base_phonemes() const;

  // "thaifront-vocab\t1" header, then "token\tid\tkind" rows in id order.
  std::string Serialize() const;
  static PhonemeVocab Parse(std::string_view text);
  static PhonemeVocab Load(const std::string& path);
  void Save(const std::string& path) const;

  bool operator==(const PhonemeVocab& other) const { return tokens_ == other.tokens_; }

 private:
  void Index();

  std::vector<VocabToken> tokens_;
  std::map<std::string, int, std::less<>> base_;
  std::map<std::pair<std::string, int>, int> merged_;
};

// Vocab over every phoneme observed in the annotations. Throws
// ValidationError when the list is empty.
PhonemeVocab BuildVocab(const std::vector<PhonemeToneEntry>& annotations);

struct EncodedSequence {
  std::vector<int> ids;
  // Half-open [start, end) per syllable, in order. Positions outside every
  // span hold pause tokens.
  std::vector<std::pair<std::size_t, std::size_t>> syllable_spans;
  bool operator==(const EncodedSequence&) const = default;
};

// Unknown phonemes become the unk id; `unknown_count`, when given, receives
// how many there were.
EncodedSequence Encode(const PhonemeToneSequence& seq, const PhonemeVocab& vocab,
                       std::size_t* unknown_count = nullptr);
// Pauses become the pause id between syllable spans.
EncodedSequence EncodeUtterance(const Utterance& utterance, const PhonemeVocab& vocab,
                                std::size_t* unknown_count = nullptr);

// Throws ValidationError on any structural violation: spans out of order or
// range, a base token at a syllable end, a merged or special token inside a
// span, or a non-pause token outside the spans.
Utterance DecodeUtterance(const EncodedSequence& enc, const PhonemeVocab& vocab);
// As DecodeUtterance, and additionally requires spans to cover every id.
PhonemeToneSequence Decode(const EncodedSequence& enc, const PhonemeVocab& vocab);

// Space separated ids.
std::string RenderIds(const EncodedSequence& enc);

}  // namespace thaifront

#endif  // THAIFRONT_PHONEME_TONE_ENCODING_H_
