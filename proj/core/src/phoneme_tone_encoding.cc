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

#include "thaifront/phoneme_tone_encoding.h"

#include <algorithm>
#include <charconv>
#include <set>

#include "thaifront/error.h"
#include "thaifront/unicode.h"

namespace thaifront {

namespace {

constexpr std::string_view kHeader = "thaifront-vocab";
constexpr std::string_view kSpecialNames[] = {"<pad>", "<unk>", "<pause>"};

std::string_view KindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kSpecial:
      return "special";
    case TokenKind::kBase:
      return "base";
    case TokenKind::kMerged:
      return "merged";
  }
  return "?";
}

void CheckPhoneme(std::string_view ph) {
  if (ph.empty()) throw ValidationError("empty phoneme in vocab");
  for (char32_t ch : DecodeUtf8(ph)) {
    if (IsWhitespace(ch) || ch == U'#') {
      throw ValidationError("phoneme '" + std::string(ph) + "' has whitespace or '#'");
    }
  }
}

std::string MergedText(std::string_view phoneme, Tone tone) {
  std::string s(phoneme);
  s += '#';
  s += ToneDigit(tone);
  return s;
}

}  // namespace

PhonemeVocab PhonemeVocab::FromPhonemes(const std::vector<std::string>& phonemes) {
  std::set<std::string> sorted(phonemes.begin(), phonemes.end());
  if (sorted.empty()) throw ValidationError("vocab needs at least one phoneme");
  PhonemeVocab vocab;
  for (std::string_view name : kSpecialNames) {
    vocab.tokens_.push_back({TokenKind::kSpecial, std::string(name), "", Tone::kMid});
  }
  for (const auto& ph : sorted) {
    CheckPhoneme(ph);
    vocab.tokens_.push_back({TokenKind::kBase, ph, ph, Tone::kMid});
  }
  for (const auto& ph : sorted) {
    for (Tone t : kAllTones) vocab.tokens_.push_back({TokenKind::kMerged, MergedText(ph, t), ph, t});
  }
  vocab.Index();
  return vocab;
}

void PhonemeVocab::Index() {
  base_.clear();
  merged_.clear();
  for (std::size_t id = 0; id < tokens_.size(); ++id) {
    const VocabToken& t = tokens_[id];
    const int i = static_cast<int>(id);
    if (t.kind == TokenKind::kBase) {
      if (!base_.emplace(t.phoneme, i).second) {
        throw ValidationError("duplicate base token '" + t.phoneme + "'");
      }
    } else if (t.kind == TokenKind::kMerged) {
      if (!merged_.emplace(std::make_pair(t.phoneme, static_cast<int>(t.tone)), i).second) {
        throw ValidationError("duplicate merged token '" + t.text + "'");
      }
    }
  }
  if (base_.empty()) throw ValidationError("vocab has no base tokens");
  for (const auto& [ph, id] : base_) {
    for (Tone t : kAllTones) {
      if (!merged_.count({ph, static_cast<int>(t)})) {
        throw ValidationError("missing merged token '" + MergedText(ph, t) + "'");
      }
    }
  }
  if (merged_.size() != kAllTones.size() * base_.size()) {
    throw ValidationError("merged token without a base token");
  }
}

std::optional<int> PhonemeVocab::BaseId(std::string_view phoneme) const {
  auto it = base_.find(phoneme);
  if (it == base_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> PhonemeVocab::MergedId(std::string_view phoneme, Tone tone) const {
  auto it = merged_.find({std::string(phoneme), static_cast<int>(tone)});
  if (it == merged_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> PhonemeVocab::base_phonemes() const {
  std::vector<std::string> out;
  for (const auto& [ph, id] : base_) out.push_back(ph);
  return out;
}

std::string PhonemeVocab::Serialize() const {
  std::string out = std::string(kHeader) + "\t" + std::to_string(kVocabVersion) + "\n";
  for (std::size_t id = 0; id < tokens_.size(); ++id) {
    out += tokens_[id].text;
    out += '\t';
    out += std::to_string(id);
    out += '\t';
    out += KindName(tokens_[id].kind);
    out += '\n';
  }
  return out;
}

PhonemeVocab PhonemeVocab::Parse(std::string_view text) {
  const auto lines = SplitLines(text);
  if (lines.empty() || lines[0] != std::string(kHeader) + "\t" + std::to_string(kVocabVersion)) {
    throw ParseError("missing or unsupported vocab header", 1);
  }
  PhonemeVocab vocab;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_number = i + 1;
    const auto f = SplitFields(lines[i], '\t');
    if (f.size() != 3) throw ParseError("expected token, id and kind", line_number);
    std::size_t id = 0;
    auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), id);
    if (ec != std::errc() || ptr != f[1].data() + f[1].size() || id != vocab.tokens_.size()) {
      throw ParseError("ids must be contiguous from 0", line_number);
    }
    VocabToken tok;
    tok.text = std::string(f[0]);
    if (f[2] == "special") {
      if (id >= kSpecialCount || f[0] != kSpecialNames[id]) {
        throw ParseError("unexpected special token", line_number);
      }
      tok.kind = TokenKind::kSpecial;
    } else if (id < kSpecialCount) {
      throw ParseError("ids 0-2 are reserved for special tokens", line_number);
    } else if (f[2] == "base") {
      tok.kind = TokenKind::kBase;
      tok.phoneme = tok.text;
    } else if (f[2] == "merged") {
      tok.kind = TokenKind::kMerged;
      const std::size_t hash = f[0].rfind('#');
      if (hash == std::string_view::npos || hash + 2 != f[0].size()) {
        throw ParseError("merged token must end in '#digit'", line_number);
      }
      auto tone = ToneFromDigit(f[0][hash + 1]);
      if (!tone) throw ParseError("bad tone digit", line_number);
      tok.phoneme = std::string(f[0].substr(0, hash));
      tok.tone = *tone;
    } else {
      throw ParseError("unknown token kind '" + std::string(f[2]) + "'", line_number);
    }
    if (tok.kind != TokenKind::kSpecial) {
      try {
        CheckPhoneme(tok.phoneme);
      } catch (const ValidationError& e) {
        throw ParseError(e.what(), line_number);
      }
    }
    vocab.tokens_.push_back(std::move(tok));
  }
  if (vocab.tokens_.size() < kSpecialCount) throw ParseError("vocab lacks special tokens");
  try {
    vocab.Index();
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  return vocab;
}

PhonemeVocab PhonemeVocab::Load(const std::string& path) { return Parse(ReadFile(path)); }

void PhonemeVocab::Save(const std::string& path) const { WriteFile(path, Serialize()); }

PhonemeVocab BuildVocab(const std::vector<PhonemeToneEntry>& annotations) {
  if (annotations.empty()) throw ValidationError("cannot build a vocab from no annotations");
  std::vector<std::string> phonemes;
  for (const auto& entry : annotations) {
    for (const auto& syl : entry.pronunciation.syllables) {
      phonemes.insert(phonemes.end(), syl.phonemes.begin(), syl.phonemes.end());
    }
  }
  return PhonemeVocab::FromPhonemes(phonemes);
}

namespace {

void AppendSyllable(const Syllable& syl, const PhonemeVocab& vocab, EncodedSequence* out,
                    std::size_t* unknown) {
  const std::size_t start = out->ids.size();
  for (std::size_t i = 0; i < syl.phonemes.size(); ++i) {
    const bool last = i + 1 == syl.phonemes.size();
    auto id = last ? vocab.MergedId(syl.phonemes[i], syl.tone) : vocab.BaseId(syl.phonemes[i]);
    if (!id) ++*unknown;
    out->ids.push_back(id.value_or(PhonemeVocab::kUnkId));
  }
  out->syllable_spans.emplace_back(start, out->ids.size());
}

}  // namespace

EncodedSequence Encode(const PhonemeToneSequence& seq, const PhonemeVocab& vocab,
                       std::size_t* unknown_count) {
  EncodedSequence out;
  std::size_t unknown = 0;
  for (const auto& syl : seq.syllables) AppendSyllable(syl, vocab, &out, &unknown);
  if (unknown_count) *unknown_count = unknown;
  return out;
}

EncodedSequence EncodeUtterance(const Utterance& utterance, const PhonemeVocab& vocab,
                                std::size_t* unknown_count) {
  EncodedSequence out;
  std::size_t unknown = 0;
  for (const auto& item : utterance) {
    if (const auto* syl = std::get_if<Syllable>(&item)) {
      AppendSyllable(*syl, vocab, &out, &unknown);
    } else {
      out.ids.push_back(PhonemeVocab::kPauseId);
    }
  }
  if (unknown_count) *unknown_count = unknown;
  return out;
}

Utterance DecodeUtterance(const EncodedSequence& enc, const PhonemeVocab& vocab) {
  Utterance out;
  auto kind_at = [&](std::size_t pos) {
    const int id = enc.ids[pos];
    if (!vocab.Contains(id)) {
      throw ValidationError("id " + std::to_string(id) + " outside the vocab");
    }
    return vocab.token(id).kind;
  };
  auto expect_pauses = [&](std::size_t from, std::size_t to) {
    for (std::size_t p = from; p < to; ++p) {
      if (enc.ids[p] != PhonemeVocab::kPauseId) {
        throw ValidationError("position " + std::to_string(p) + " lies outside every syllable");
      }
      out.emplace_back(Pause{});
    }
  };
  std::size_t cursor = 0;
  for (const auto& [start, end] : enc.syllable_spans) {
    if (start < cursor || start >= end || end > enc.ids.size()) {
      throw ValidationError("malformed syllable span table");
    }
    expect_pauses(cursor, start);
    Syllable syl;
    for (std::size_t p = start; p < end; ++p) {
      const TokenKind kind = kind_at(p);
      const bool last = p + 1 == end;
      if (last ? kind != TokenKind::kMerged : kind != TokenKind::kBase) {
        throw ValidationError("position " + std::to_string(p) +
                              (last ? " must hold a tone-bearing token"
                                    : " must hold a plain phoneme token"));
      }
      const VocabToken& tok = vocab.token(enc.ids[p]);
      syl.phonemes.push_back(tok.phoneme);
      if (last) syl.tone = tok.tone;
    }
    out.emplace_back(std::move(syl));
    cursor = end;
  }
  expect_pauses(cursor, enc.ids.size());
  return out;
}

PhonemeToneSequence Decode(const EncodedSequence& enc, const PhonemeVocab& vocab) {
  PhonemeToneSequence seq;
  for (auto& item : DecodeUtterance(enc, vocab)) {
    auto* syl = std::get_if<Syllable>(&item);
    if (!syl) throw ValidationError("syllable spans do not cover the sequence");
    seq.syllables.push_back(std::move(*syl));
  }
  return seq;
}

std::string RenderIds(const EncodedSequence& enc) {
  std::string out;
  for (std::size_t i = 0; i < enc.ids.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(enc.ids[i]);
  }
  return out;
}

}  // namespace thaifront
