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

#include "thaifront/phonology.h"

#include <algorithm>
#include <memory>
#include <set>
#include <utility>

#include "thaifront/default_tone_rules.h"
#include "thaifront/unicode.h"

namespace thaifront {

namespace {

struct ConsonantInfo {
  ConsonantClass cls;
  const char* onset;
  // Empty when the letter never closes a syllable.
  const char* coda;
};

constexpr char32_t kFirstConsonant = U'ก';
constexpr char32_t kLastConsonant = U'ฮ';
constexpr char32_t kRuRue = U'ฤ';  // ฤ, a vowel letter inside the block
constexpr char32_t kLuLue = U'ฦ';  // ฦ

using CC = ConsonantClass;

// Indexed by code point - U+0E01. The two vowel letters are placeholders.
constexpr ConsonantInfo kConsonants[] = {
    {CC::kMid, "k", "k"},     // ก
    {CC::kHigh, "kʰ", "k"},   // ข
    {CC::kHigh, "kʰ", "k"},   // ฃ
    {CC::kLow, "kʰ", "k"},    // ค
    {CC::kLow, "kʰ", "k"},    // ฅ
    {CC::kLow, "kʰ", "k"},    // ฆ
    {CC::kLow, "ŋ", "ŋ"},     // ง
    {CC::kMid, "tɕ", "t"},    // จ
    {CC::kHigh, "tɕʰ", "t"},  // ฉ
    {CC::kLow, "tɕʰ", "t"},   // ช
    {CC::kLow, "s", "t"},     // ซ
    {CC::kLow, "tɕʰ", "t"},   // ฌ
    {CC::kLow, "j", "n"},     // ญ
    {CC::kMid, "d", "t"},     // ฎ
    {CC::kMid, "t", "t"},     // ฏ
    {CC::kHigh, "tʰ", "t"},   // ฐ
    {CC::kLow, "tʰ", "t"},    // ฑ
    {CC::kLow, "tʰ", "t"},    // ฒ
    {CC::kLow, "n", "n"},     // ณ
    {CC::kMid, "d", "t"},     // ด
    {CC::kMid, "t", "t"},     // ต
    {CC::kHigh, "tʰ", "t"},   // ถ
    {CC::kLow, "tʰ", "t"},    // ท
    {CC::kLow, "tʰ", "t"},    // ธ
    {CC::kLow, "n", "n"},     // น
    {CC::kMid, "b", "p"},     // บ
    {CC::kMid, "p", "p"},     // ป
    {CC::kHigh, "pʰ", "p"},   // ผ
    {CC::kHigh, "f", "p"},    // ฝ
    {CC::kLow, "pʰ", "p"},    // พ
    {CC::kLow, "f", "p"},     // ฟ
    {CC::kLow, "pʰ", "p"},    // ภ
    {CC::kLow, "m", "m"},     // ม
    {CC::kLow, "j", "j"},     // ย
    {CC::kLow, "r", "n"},     // ร
    {CC::kLow, "", ""},       // ฤ (vowel)
    {CC::kLow, "l", "n"},     // ล
    {CC::kLow, "", ""},       // ฦ (vowel)
    {CC::kLow, "w", "w"},     // ว
    {CC::kHigh, "s", "t"},    // ศ
    {CC::kHigh, "s", "t"},    // ษ
    {CC::kHigh, "s", "t"},    // ส
    {CC::kHigh, "h", ""},     // ห
    {CC::kLow, "l", "n"},     // ฬ
    {CC::kMid, "ʔ", ""},      // อ
    {CC::kLow, "h", ""},      // ฮ
};
static_assert(sizeof(kConsonants) / sizeof(kConsonants[0]) ==
              kLastConsonant - kFirstConsonant + 1);

const ConsonantInfo& Info(char32_t ch) { return kConsonants[ch - kFirstConsonant]; }

constexpr char32_t kSaraA = U'ะ';        // ะ
constexpr char32_t kMaiHanAkat = U'ั';   // ั
constexpr char32_t kSaraAa = U'า';       // า
constexpr char32_t kSaraAm = U'ำ';       // ำ
constexpr char32_t kMaiTaiKhu = U'็';    // ็
constexpr char32_t kThanthakhat = U'์';  // ์
constexpr char32_t kSaraI = U'ิ';        // ิ
constexpr char32_t kSaraU = U'ุ';        // ุ

std::optional<ToneMark> AsToneMark(char32_t ch) {
  switch (ch) {
    case U'่': return ToneMark::kMaiEk;
    case U'้': return ToneMark::kMaiTho;
    case U'๊': return ToneMark::kMaiTri;
    case U'๋': return ToneMark::kMaiChattawa;
    default: return std::nullopt;
  }
}

// Characters that must attach to a preceding initial.
bool IsDependentSign(char32_t ch) {
  return (ch >= U'ะ' && ch <= U'ฺ') || (ch >= U'็' && ch <= U'๎') ||
         ch == U'ๅ';
}

enum class Final { kNone, kOptional, kRequired };

struct VowelTemplate {
  std::u32string_view pre;
  std::u32string_view mid;
  std::u32string_view post;
  Final final;
  const char* vowel;
  VowelLength length;
  const char* implicit_coda;  // nullptr when the template implies no final

  int Literals() const { return static_cast<int>(pre.size() + mid.size() + post.size()); }
};

using VL = VowelLength;

// Order only breaks ties between candidates of equal rank.
constexpr VowelTemplate kTemplates[] = {
    {U"เ", U"ื", U"อะ", Final::kNone, "ɯa", VL::kShort, nullptr},
    {U"เ", U"ี", U"ยะ", Final::kNone, "ia", VL::kShort, nullptr},
    {U"เ", U"", U"าะ", Final::kNone, "ɔ", VL::kShort, nullptr},
    {U"เ", U"", U"อะ", Final::kNone, "ɤ", VL::kShort, nullptr},
    {U"", U"ั", U"วะ", Final::kNone, "ua", VL::kShort, nullptr},
    {U"เ", U"ื", U"อ", Final::kOptional, "ɯːa", VL::kLong, nullptr},
    {U"เ", U"ี", U"ย", Final::kOptional, "iːa", VL::kLong, nullptr},
    {U"", U"ั", U"ว", Final::kNone, "uːa", VL::kLong, nullptr},
    {U"เ", U"", U"ย", Final::kNone, "ɤː", VL::kLong, "j"},
    {U"เ", U"", U"อ", Final::kNone, "ɤː", VL::kLong, nullptr},
    {U"เ", U"ิ", U"", Final::kRequired, "ɤː", VL::kLong, nullptr},
    {U"เ", U"", U"า", Final::kNone, "a", VL::kShort, "w"},
    {U"เ", U"", U"ะ", Final::kNone, "e", VL::kShort, nullptr},
    {U"แ", U"", U"ะ", Final::kNone, "ɛ", VL::kShort, nullptr},
    {U"โ", U"", U"ะ", Final::kNone, "o", VL::kShort, nullptr},
    {U"เ", U"็", U"", Final::kRequired, "e", VL::kShort, nullptr},
    {U"แ", U"็", U"", Final::kRequired, "ɛ", VL::kShort, nullptr},
    {U"", U"็", U"อ", Final::kRequired, "ɔ", VL::kShort, nullptr},
    {U"", U"ื", U"อ", Final::kNone, "ɯː", VL::kLong, nullptr},
    {U"", U"", U"ว", Final::kRequired, "uːa", VL::kLong, nullptr},
    {U"", U"", U"อ", Final::kOptional, "ɔː", VL::kLong, nullptr},
    {U"", U"", U"ะ", Final::kNone, "a", VL::kShort, nullptr},
    {U"", U"ั", U"", Final::kRequired, "a", VL::kShort, nullptr},
    {U"", U"", U"า", Final::kOptional, "aː", VL::kLong, nullptr},
    {U"", U"", U"ำ", Final::kNone, "a", VL::kShort, "m"},
    {U"", U"ิ", U"", Final::kOptional, "i", VL::kShort, nullptr},
    {U"", U"ี", U"", Final::kOptional, "iː", VL::kLong, nullptr},
    {U"", U"ึ", U"", Final::kOptional, "ɯ", VL::kShort, nullptr},
    {U"", U"ื", U"", Final::kRequired, "ɯː", VL::kLong, nullptr},
    {U"", U"ุ", U"", Final::kOptional, "u", VL::kShort, nullptr},
    {U"", U"ู", U"", Final::kOptional, "uː", VL::kLong, nullptr},
    {U"เ", U"", U"", Final::kOptional, "eː", VL::kLong, nullptr},
    {U"แ", U"", U"", Final::kOptional, "ɛː", VL::kLong, nullptr},
    {U"โ", U"", U"", Final::kOptional, "oː", VL::kLong, nullptr},
    {U"ใ", U"", U"", Final::kNone, "a", VL::kShort, "j"},
    {U"ไ", U"", U"", Final::kNone, "a", VL::kShort, "j"},
    {U"", U"", U"รร", Final::kRequired, "a", VL::kShort, nullptr},
    {U"", U"", U"รร", Final::kNone, "a", VL::kShort, "n"},
    {U"", U"", U"", Final::kRequired, "o", VL::kShort, nullptr},
};

bool IsSonorantCoda(std::string_view coda) {
  return coda == "m" || coda == "n" || coda == "ŋ" || coda == "j" || coda == "w";
}

bool MatchLiteral(std::u32string_view w, std::size_t* pos, std::u32string_view lit) {
  if (w.substr(*pos, lit.size()) != lit) return false;
  *pos += lit.size();
  return true;
}

// Skips letters silenced by thanthakhat: C์, Cิ์, Cุ์ and CC์.
std::size_t SkipSilent(std::u32string_view w, std::size_t k) {
  while (k < w.size() && IsThaiConsonant(w[k])) {
    auto at = [&](std::size_t i) { return i < w.size() ? w[i] : U'\0'; };
    if (at(k + 1) == kThanthakhat) {
      k += 2;
    } else if ((at(k + 1) == kSaraI || at(k + 1) == kSaraU) && at(k + 2) == kThanthakhat) {
      k += 3;
    } else if (IsThaiConsonant(at(k + 1)) && at(k + 2) == kThanthakhat) {
      k += 3;
    } else {
      break;
    }
  }
  return k;
}

bool CodaEligible(std::u32string_view w, std::size_t k) {
  if (k >= w.size() || !IsThaiConsonant(w[k])) return false;
  if (*Info(w[k]).coda == '\0') return false;
  return k + 1 >= w.size() || !IsDependentSign(w[k + 1]);
}

struct Onset {
  std::size_t length;
  ConsonantClass cls;
  std::vector<std::string> phonemes;
  std::u32string_view letters;
};

struct Candidate {
  SyllableStructure syllable;
  std::size_t end;
  int literals;
  std::size_t onset_length;
  std::size_t order;
};

class SyllableMatcher {
 public:
  SyllableMatcher(std::u32string_view word, const ToneRules& rules)
      : word_(word), rules_(rules) {}

  bool Parse(std::size_t pos, std::vector<SyllableStructure>* out) {
    if (pos == word_.size()) return true;
    if (failed_.count(pos) != 0) return false;
    furthest_ = std::max(furthest_, pos);
    std::vector<Candidate> candidates = MatchAt(pos);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                       if (a.literals != b.literals) return a.literals > b.literals;
                       if (a.end != b.end) return a.end > b.end;
                       if (a.onset_length != b.onset_length) return a.onset_length > b.onset_length;
                       return a.order < b.order;
                     });
    for (auto& c : candidates) {
      out->push_back(std::move(c.syllable));
      if (Parse(c.end, out)) return true;
      out->pop_back();
    }
    failed_.insert(pos);
    return false;
  }

  std::size_t furthest() const { return furthest_; }

 private:
  std::vector<Onset> OnsetsAt(std::size_t p) const {
    std::vector<Onset> onsets;
    if (p >= word_.size() || !IsThaiConsonant(word_[p])) return onsets;
    for (const auto& rule : rules_.onset_rules()) {
      if (word_.substr(p, rule.letters.size()) == rule.letters) {
        onsets.push_back({rule.letters.size(), rule.onset_class, rule.phonemes, rule.letters});
      }
    }
    const ConsonantInfo& info = Info(word_[p]);
    onsets.push_back({1, info.cls, {info.onset}, word_.substr(p, 1)});
    return onsets;
  }

  std::vector<Candidate> MatchAt(std::size_t pos) const {
    std::vector<Candidate> out;
    for (std::size_t t = 0; t < std::size(kTemplates); ++t) {
      const VowelTemplate& tpl = kTemplates[t];
      std::size_t p = pos;
      if (!MatchLiteral(word_, &p, tpl.pre)) continue;
      for (const Onset& onset : OnsetsAt(p)) {
        std::size_t q = p + onset.length;
        if (!MatchLiteral(word_, &q, tpl.mid)) continue;
        ToneMark mark = ToneMark::kNone;
        if (q < word_.size()) {
          if (auto m = AsToneMark(word_[q])) {
            mark = *m;
            ++q;
          }
        }
        if (!MatchLiteral(word_, &q, tpl.post)) continue;

        auto emit = [&](std::size_t end, std::optional<std::string> coda) {
          Candidate c;
          SyllableStructure& s = c.syllable;
          s.surface = EncodeUtf8(word_.substr(pos, end - pos));
          s.onset_letters = EncodeUtf8(onset.letters);
          s.onset_phonemes = onset.phonemes;
          s.onset_class = onset.cls;
          s.vowel = tpl.vowel;
          s.vowel_length = tpl.length;
          s.coda = std::move(coda);
          s.coda_sonorant = s.coda && IsSonorantCoda(*s.coda);
          s.tone_mark = mark;
          s.liveness = ComputeLiveness(s.coda, s.coda_sonorant, s.vowel_length);
          c.end = end;
          c.literals = tpl.Literals();
          c.onset_length = onset.length;
          c.order = t;
          out.push_back(std::move(c));
        };

        if (tpl.final == Final::kNone) {
          emit(SkipSilent(word_, q),
               tpl.implicit_coda ? std::optional<std::string>(tpl.implicit_coda)
                                 : std::nullopt);
          continue;
        }
        const std::size_t s = SkipSilent(word_, q);
        if (CodaEligible(word_, s)) {
          emit(SkipSilent(word_, s + 1), std::string(Info(word_[s]).coda));
        }
        if (tpl.final == Final::kOptional) emit(s, std::nullopt);
      }
    }
    return out;
  }

  std::u32string_view word_;
  const ToneRules& rules_;
  std::set<std::size_t> failed_;
  std::size_t furthest_ = 0;
};

template <typename Enum, std::size_t N>
std::optional<Enum> EnumFromName(std::string_view name, std::string_view (*to_name)(Enum)) {
  for (std::size_t i = 0; i < N; ++i) {
    const auto e = static_cast<Enum>(i);
    if (to_name(e) == name) return e;
  }
  return std::nullopt;
}

}  // namespace

std::string_view ConsonantClassName(ConsonantClass c) {
  switch (c) {
    case ConsonantClass::kMid: return "mid";
    case ConsonantClass::kHigh: return "high";
    case ConsonantClass::kLow: return "low";
  }
  return "?";
}

std::string_view LivenessName(Liveness l) { return l == Liveness::kLive ? "live" : "dead"; }

std::string_view VowelLengthName(VowelLength l) {
  return l == VowelLength::kShort ? "short" : "long";
}

std::string_view ToneMarkName(ToneMark m) {
  switch (m) {
    case ToneMark::kNone: return "none";
    case ToneMark::kMaiEk: return "mai_ek";
    case ToneMark::kMaiTho: return "mai_tho";
    case ToneMark::kMaiTri: return "mai_tri";
    case ToneMark::kMaiChattawa: return "mai_chattawa";
  }
  return "?";
}

bool IsThaiConsonant(char32_t ch) {
  return ch >= kFirstConsonant && ch <= kLastConsonant && ch != kRuRue && ch != kLuLue;
}

ConsonantClass GetConsonantClass(char32_t ch) {
  if (!IsThaiConsonant(ch)) {
    throw ValidationError("'" + EncodeUtf8(ch) + "' is not a Thai consonant letter");
  }
  return Info(ch).cls;
}

ConsonantClass GetConsonantClass(std::string_view utf8_letter) {
  const std::u32string decoded = DecodeUtf8(utf8_letter);
  if (decoded.size() != 1) {
    throw ValidationError("expected a single Thai consonant letter, got '" +
                          std::string(utf8_letter) + "'");
  }
  return GetConsonantClass(decoded[0]);
}

std::vector<std::string> SyllableStructure::Phonemes() const {
  std::vector<std::string> out = onset_phonemes;
  out.push_back(vowel);
  if (coda) out.push_back(*coda);
  return out;
}

Liveness ComputeLiveness(const std::optional<std::string>& coda, bool coda_sonorant,
                         VowelLength length) {
  if (coda) return coda_sonorant ? Liveness::kLive : Liveness::kDead;
  return length == VowelLength::kLong ? Liveness::kLive : Liveness::kDead;
}

SyllableParseError::SyllableParseError(std::string word, std::size_t begin, std::size_t end)
    : Error([&] {
        const std::u32string w = DecodeUtf8(word);
        return "cannot parse '" + word + "' at code points [" + std::to_string(begin) +
               ", " + std::to_string(end) + "): '" +
               EncodeUtf8(std::u32string_view(w).substr(begin, end - begin)) + "'";
      }()),
      word_(std::move(word)),
      begin_(begin),
      end_(end) {}

// ---------------------------------------------------------------------------
// ToneRules

std::size_t ToneRules::CellIndex(ConsonantClass c, Liveness l, VowelLength len, ToneMark m) {
  return ((static_cast<std::size_t>(c) * 2 + static_cast<std::size_t>(l)) * 2 +
          static_cast<std::size_t>(len)) * 5 +
         static_cast<std::size_t>(m);
}

ToneRules ToneRules::Parse(std::string_view tsv) {
  ToneRules rules;
  std::array<bool, kCells> seen{};
  bool have_header = false;
  std::size_t line_number = 0;
  for (std::string_view line : SplitLines(tsv)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    const auto f = SplitFields(line, '\t');
    if (!have_header) {
      if (f.size() != 2 || f[0] != "thaifront-tone-rules") {
        throw ParseError("missing 'thaifront-tone-rules<TAB>version' header", line_number);
      }
      if (f[1] != std::to_string(kToneRulesVersion)) {
        throw ParseError("unsupported tone rules version '" + std::string(f[1]) + "'",
                         line_number);
      }
      rules.version_ = kToneRulesVersion;
      have_header = true;
      continue;
    }
    if (f[0] == "tone") {
      if (f.size() != 6) throw ParseError("tone row needs 6 fields", line_number);
      const auto c = EnumFromName<ConsonantClass, 3>(f[1], ConsonantClassName);
      const auto l = EnumFromName<Liveness, 2>(f[2], LivenessName);
      const auto len = EnumFromName<VowelLength, 2>(f[3], VowelLengthName);
      const auto m = EnumFromName<ToneMark, 5>(f[4], ToneMarkName);
      const auto tone = ToneFromName(f[5]);
      if (!c || !l || !len || !m || !tone) {
        throw ParseError("unknown name in tone row", line_number);
      }
      const std::size_t idx = CellIndex(*c, *l, *len, *m);
      if (seen[idx]) throw ParseError("duplicate tone cell", line_number);
      seen[idx] = true;
      rules.grid_[idx] = *tone;
    } else if (f[0] == "onset") {
      if (f.size() != 4) throw ParseError("onset row needs 4 fields", line_number);
      OnsetRule rule;
      rule.letters = DecodeUtf8(NormalizeNfc(f[1]));
      if (rule.letters.size() < 2 ||
          !std::all_of(rule.letters.begin(), rule.letters.end(), IsThaiConsonant)) {
        throw ParseError("onset letters must be two or more Thai consonants", line_number);
      }
      const auto c = EnumFromName<ConsonantClass, 3>(f[2], ConsonantClassName);
      if (!c) throw ParseError("unknown consonant class '" + std::string(f[2]) + "'", line_number);
      rule.onset_class = *c;
      for (std::string_view ph : SplitFields(f[3], ' ')) {
        if (!IsRegisteredPhoneme(ph)) {
          throw ParseError("onset phoneme '" + std::string(ph) + "' not in inventory",
                           line_number);
        }
        rule.phonemes.emplace_back(ph);
      }
      rules.onset_rules_.push_back(std::move(rule));
    } else {
      throw ParseError("unknown row kind '" + std::string(f[0]) + "'", line_number);
    }
  }
  if (!have_header) throw ParseError("empty tone rules table");
  const auto missing = std::count(seen.begin(), seen.end(), false);
  if (missing != 0) {
    throw ParseError("tone grid is missing " + std::to_string(missing) + " of " +
                     std::to_string(kCells) + " cells");
  }
  // Longer onsets first so a digraph wins over its prefix.
  std::stable_sort(rules.onset_rules_.begin(), rules.onset_rules_.end(),
                   [](const OnsetRule& a, const OnsetRule& b) {
                     return a.letters.size() > b.letters.size();
                   });
  return rules;
}

ToneRules ToneRules::Load(const std::string& path) { return Parse(ReadFile(path)); }

const ToneRules& ToneRules::Default() {
  static const ToneRules rules = Parse(internal::kDefaultToneRulesTsv);
  return rules;
}

std::string ToneRules::Serialize() const {
  std::string out = "thaifront-tone-rules\t" + std::to_string(kToneRulesVersion) + "\n";
  for (int c = 0; c < 3; ++c) {
    for (int l = 0; l < 2; ++l) {
      for (int len = 0; len < 2; ++len) {
        for (int m = 0; m < 5; ++m) {
          const auto cc = static_cast<ConsonantClass>(c);
          const auto ll = static_cast<Liveness>(l);
          const auto vl = static_cast<VowelLength>(len);
          const auto mm = static_cast<ToneMark>(m);
          out += "tone\t";
          out += ConsonantClassName(cc);
          out += '\t';
          out += LivenessName(ll);
          out += '\t';
          out += VowelLengthName(vl);
          out += '\t';
          out += ToneMarkName(mm);
          out += '\t';
          out += ToneName(Lookup(cc, ll, vl, mm));
          out += '\n';
        }
      }
    }
  }
  for (const auto& rule : onset_rules_) {
    out += "onset\t" + EncodeUtf8(rule.letters) + "\t";
    out += ConsonantClassName(rule.onset_class);
    out += '\t';
    for (std::size_t i = 0; i < rule.phonemes.size(); ++i) {
      if (i) out += ' ';
      out += rule.phonemes[i];
    }
    out += '\n';
  }
  return out;
}

Tone ToneRules::Lookup(ConsonantClass c, Liveness l, VowelLength len, ToneMark m) const {
  return grid_[CellIndex(c, l, len, m)];
}

Tone ToneRules::Determine(const SyllableStructure& s) const {
  return Lookup(s.onset_class, s.liveness, s.vowel_length, s.tone_mark);
}

Tone DetermineTone(const SyllableStructure& s) { return ToneRules::Default().Determine(s); }

// ---------------------------------------------------------------------------
// Parsing and G2P

std::vector<SyllableStructure> ParseSyllables(std::string_view word, const ToneRules& rules) {
  if (word.empty()) throw ValidationError("cannot parse an empty word");
  if (!IsNfc(word)) throw ValidationError("word '" + std::string(word) + "' is not NFC");
  const std::u32string w = DecodeUtf8(word);
  SyllableMatcher matcher(w, rules);
  std::vector<SyllableStructure> out;
  if (!matcher.Parse(0, &out)) {
    throw SyllableParseError(std::string(word), matcher.furthest(), w.size());
  }
  return out;
}

PhonemeToneSequence RulePronunciation(std::string_view word, const ToneRules& rules) {
  PhonemeToneSequence seq;
  for (const SyllableStructure& s : ParseSyllables(word, rules)) {
    seq.syllables.push_back({s.Phonemes(), rules.Determine(s)});
  }
  ValidatePhonemeToneSequence(seq);
  return seq;
}

namespace {

std::unordered_map<std::string, PhonemeToneSequence> MostFrequent(
    const std::vector<PhonemeToneEntry>& entries) {
  struct Tally {
    std::vector<std::pair<PhonemeToneSequence, std::size_t>> readings;
  };
  std::unordered_map<std::string, Tally> tallies;
  for (const auto& e : entries) {
    auto& readings = tallies[e.word].readings;
    auto it = std::find_if(readings.begin(), readings.end(),
                           [&](const auto& r) { return r.first == e.pronunciation; });
    if (it == readings.end()) {
      readings.emplace_back(e.pronunciation, 1);
    } else {
      ++it->second;
    }
  }
  std::unordered_map<std::string, PhonemeToneSequence> best;
  for (auto& [word, tally] : tallies) {
    // max_element keeps the first of equal counts, i.e. the earliest line.
    auto it = std::max_element(tally.readings.begin(), tally.readings.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
    best.emplace(word, it->first);
  }
  return best;
}

}  // namespace

ExceptionDictionary BuildExceptionDictionary(const std::vector<PhonemeToneEntry>& entries) {
  return MostFrequent(entries);
}

G2pFallback AnnotationFallback(const std::vector<PhonemeToneEntry>& annotations) {
  auto table = std::make_shared<const std::unordered_map<std::string, PhonemeToneSequence>>(
      MostFrequent(annotations));
  return [table](std::string_view word) -> std::optional<PhonemeToneSequence> {
    auto it = table->find(std::string(word));
    if (it == table->end()) return std::nullopt;
    return it->second;
  };
}

G2p::G2p(ToneRules rules, ExceptionDictionary exceptions, G2pFallback fallback)
    : rules_(std::move(rules)),
      exceptions_(std::move(exceptions)),
      fallback_(std::move(fallback)) {}

PhonemeToneSequence G2p::Convert(std::string_view word, G2pSource* source) const {
  if (word.empty()) throw ValidationError("g2p input is empty");
  if (auto it = exceptions_.find(std::string(word)); it != exceptions_.end()) {
    if (source) *source = G2pSource::kException;
    return it->second;
  }
  try {
    PhonemeToneSequence seq = RulePronunciation(word, rules_);
    if (source) *source = G2pSource::kRules;
    return seq;
  } catch (const Error&) {
    // Not readable by rule; try the fallback below.
  }
  if (fallback_) {
    if (auto seq = fallback_(word)) {
      if (source) *source = G2pSource::kFallback;
      return *seq;
    }
  }
  throw UnresolvableWordError(std::string(word));
}

}  // namespace thaifront
