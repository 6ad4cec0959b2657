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

#include <gtest/gtest.h>

#include <cstring>
#include <map>
#include <set>
#include <thread>

#include "oracles.h"
#include "test_util.h"
#include "thaifront/unicode.h"

namespace thaifront {
namespace {

using testing::DataPath;

TEST(ConsonantClassTest, FullTable) {
  const std::map<ConsonantClass, std::u32string> table = {
      {ConsonantClass::kMid, U"กจฎฏดตบปอ"},
      {ConsonantClass::kHigh, U"ขฃฉฐถผฝศษสห"},
      {ConsonantClass::kLow, U"คฅฆงชซฌญฑฒณทธนพฟภมยรลวฬฮ"},
  };
  std::size_t total = 0;
  for (const auto& [cls, letters] : table) {
    for (char32_t ch : letters) {
      EXPECT_EQ(GetConsonantClass(ch), cls) << EncodeUtf8(ch);
      ++total;
    }
  }
  EXPECT_EQ(total, 44u);
  std::size_t consonants = 0;
  for (char32_t ch = 0x0E00; ch < 0x0E80; ++ch) consonants += IsThaiConsonant(ch) ? 1 : 0;
  EXPECT_EQ(consonants, 44u);
}

TEST(ConsonantClassTest, Examples) {
  EXPECT_EQ(GetConsonantClass("ก"), ConsonantClass::kMid);
  EXPECT_EQ(GetConsonantClass("ข"), ConsonantClass::kHigh);
  EXPECT_EQ(GetConsonantClass("ค"), ConsonantClass::kLow);
}

TEST(ConsonantClassTest, NonConsonantRejected) {
  EXPECT_THROW(GetConsonantClass("า"), ValidationError);
  EXPECT_THROW(GetConsonantClass("a"), ValidationError);
  EXPECT_THROW(GetConsonantClass("ฤ"), ValidationError);
  EXPECT_THROW(GetConsonantClass("กา"), ValidationError);
}

TEST(LivenessTest, Rule) {
  EXPECT_EQ(ComputeLiveness(std::nullopt, false, VowelLength::kLong), Liveness::kLive);
  EXPECT_EQ(ComputeLiveness(std::nullopt, false, VowelLength::kShort), Liveness::kDead);
  EXPECT_EQ(ComputeLiveness("n", true, VowelLength::kShort), Liveness::kLive);
  EXPECT_EQ(ComputeLiveness("t", false, VowelLength::kLong), Liveness::kDead);
}

TEST(ToneGridTest, DefaultTableMatchesTruthCellByCell) {
  const auto truth = testing::LoadToneGridTruth(DataPath("tone_grid_truth.txt"));
  ASSERT_EQ(truth.tone.size(), 60u);
  const ToneRules& rules = ToneRules::Default();
  for (const auto& [cell, tone] : truth.tone) {
    const Tone got = rules.Lookup(static_cast<ConsonantClass>(cell[0]),
                                  static_cast<Liveness>(cell[1]),
                                  static_cast<VowelLength>(cell[2]),
                                  static_cast<ToneMark>(cell[3]));
    EXPECT_EQ(static_cast<int>(got), tone)
        << cell[0] << ' ' << cell[1] << ' ' << cell[2] << ' ' << cell[3];
  }
}

TEST(ToneGridTest, ShippedFileEqualsCompiledDefault) {
  const ToneRules loaded = ToneRules::Load(testing::ToneRulesPath());
  EXPECT_EQ(loaded.Serialize(), ToneRules::Default().Serialize());
}

TEST(ToneGridTest, NamedCells) {
  SyllableStructure s;
  s.onset_class = ConsonantClass::kMid;
  s.liveness = Liveness::kLive;
  EXPECT_EQ(DetermineTone(s), Tone::kMid);
  s.onset_class = ConsonantClass::kLow;
  s.liveness = Liveness::kDead;
  s.vowel_length = VowelLength::kShort;
  EXPECT_EQ(DetermineTone(s), Tone::kHigh);
  s.tone_mark = ToneMark::kMaiTri;
  for (ConsonantClass c : {ConsonantClass::kMid, ConsonantClass::kHigh, ConsonantClass::kLow}) {
    s.onset_class = c;
    EXPECT_EQ(DetermineTone(s), Tone::kHigh);
  }
}

TEST(ToneRulesFileTest, CanonicalRoundTripAndErrors) {
  const std::string canon = ToneRules::Default().Serialize();
  EXPECT_EQ(ToneRules::Parse(canon).Serialize(), canon);
  // Dropping one tone row leaves the grid incomplete.
  const std::size_t cut = canon.find("tone\tlow");
  const std::size_t eol = canon.find('\n', cut);
  EXPECT_THROW(ToneRules::Parse(canon.substr(0, cut) + canon.substr(eol + 1)), ParseError);
  EXPECT_THROW(ToneRules::Parse("thaifront-tone-rules\t2\n"), ParseError);
  EXPECT_THROW(ToneRules::Parse(canon + "tone\tmid\tlive\tshort\tnone\tmid\n"), ParseError);
}

TEST(ParseSyllablesTest, OpenLongSyllable) {
  const auto s = ParseSyllables("กา");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_FALSE(s[0].coda.has_value());
  EXPECT_EQ(s[0].liveness, Liveness::kLive);
  EXPECT_EQ(s[0].vowel_length, VowelLength::kLong);
}

TEST(ParseSyllablesTest, StopFinalIsDead) {
  const auto s = ParseSyllables("กัด");
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].coda, "t");
  EXPECT_FALSE(s[0].coda_sonorant);
  EXPECT_EQ(s[0].liveness, Liveness::kDead);
}

TEST(ParseSyllablesTest, FixtureIsLosslessAndLivenessConsistent) {
  const auto fixture = LoadPhonemeToneAnnotations(DataPath("g2p_fixture.tsv"));
  ASSERT_GE(fixture.size(), 50u);
  for (const auto& entry : fixture) {
    const auto syllables = ParseSyllables(entry.word);
    std::string surface;
    for (const auto& s : syllables) {
      surface += s.surface;
      EXPECT_EQ(s.liveness, ComputeLiveness(s.coda, s.coda_sonorant, s.vowel_length))
          << entry.word;
    }
    EXPECT_EQ(surface, entry.word);
    EXPECT_EQ(syllables.size(), entry.pronunciation.syllables.size()) << entry.word;
  }
}

TEST(ParseSyllablesTest, UnparseableReportsSpan) {
  try {
    ParseSyllables("กาxyz");
    FAIL();
  } catch (const SyllableParseError& e) {
    EXPECT_EQ(e.end(), 5u);
    EXPECT_LE(e.begin(), 2u);
  }
  EXPECT_THROW(ParseSyllables(""), ValidationError);
}

TEST(G2pTest, FixtureMatchesHandAnnotations) {
  const auto fixture = testing::ReadPronunciationTable(DataPath("g2p_fixture.tsv"));
  const G2p g2p(ToneRules::Default(), {});
  for (const auto& [word, expected] : fixture) {
    G2pSource source;
    EXPECT_EQ(g2p.Convert(word, &source), expected) << word;
    EXPECT_EQ(source, G2pSource::kRules);
  }
}

TEST(G2pTest, EveryPhonemeIsRegistered) {
  const auto fixture = LoadPhonemeToneAnnotations(DataPath("g2p_fixture.tsv"));
  const G2p g2p(ToneRules::Default(), {});
  for (const auto& entry : fixture) {
    EXPECT_NO_THROW(ValidatePhonemeToneSequence(g2p.Convert(entry.word))) << entry.word;
  }
}

TEST(G2pTest, MinimalPairDiffersOnlyInTone) {
  const auto fixture = testing::ReadPronunciationTable(DataPath("g2p_fixture.tsv"));
  const G2p g2p(ToneRules::Default(), {});
  const auto mat = g2p.Convert("เสื่อ");
  const auto shirt = g2p.Convert("เสื้อ");
  ASSERT_EQ(mat.syllables.size(), 1u);
  ASSERT_EQ(shirt.syllables.size(), 1u);
  EXPECT_EQ(mat.syllables[0].phonemes, shirt.syllables[0].phonemes);
  EXPECT_NE(mat.syllables[0].tone, shirt.syllables[0].tone);
  EXPECT_EQ(mat, fixture.at("เสื่อ"));
  EXPECT_EQ(shirt, fixture.at("เสื้อ"));
  EXPECT_EQ(mat.syllables[0].tone, Tone::kLow);
  EXPECT_EQ(shirt.syllables[0].tone, Tone::kFalling);
}

TEST(G2pTest, MarkOnlyChangesTone) {
  const G2p g2p(ToneRules::Default(), {});
  const std::vector<std::vector<std::string>> families = {
      {"กา", "ก่า", "ก้า", "ก๊า", "ก๋า"}, {"ขา", "ข่า", "ข้า"}, {"คา", "ค่า", "ค้า"}};
  for (const auto& fam : families) {
    const auto base = g2p.Convert(fam[0]);
    std::set<Tone> tones;
    for (const auto& w : fam) {
      const auto seq = g2p.Convert(w);
      ASSERT_EQ(seq.syllables.size(), 1u) << w;
      EXPECT_EQ(seq.syllables[0].phonemes, base.syllables[0].phonemes) << w;
      tones.insert(seq.syllables[0].tone);
    }
    EXPECT_EQ(tones.size(), fam.size()) << fam[0];
  }
}

TEST(G2pTest, ExceptionsWinOverRules) {
  const auto entries = LoadPhonemeToneAnnotations(DataPath("exceptions.tsv"));
  const ExceptionDictionary dict = BuildExceptionDictionary(entries);
  // A rules table with every tone set to mid.
  std::string flat = ToneRules::Default().Serialize();
  for (const char* t : {"\tlow\n", "\tfalling\n", "\thigh\n", "\trising\n"}) {
    for (std::size_t p; (p = flat.find(t)) != std::string::npos;) flat.replace(p, std::strlen(t), "\tmid\n");
  }
  const G2p normal(ToneRules::Default(), dict);
  const G2p flattened(ToneRules::Parse(flat), dict);
  for (const auto& e : entries) {
    G2pSource source;
    EXPECT_EQ(normal.Convert(e.word, &source), e.pronunciation) << e.word;
    EXPECT_EQ(source, G2pSource::kException);
    EXPECT_EQ(flattened.Convert(e.word), e.pronunciation) << e.word;
  }
}

TEST(G2pTest, RulesAloneGetExceptionWordsWrong) {
  const auto entries = LoadPhonemeToneAnnotations(DataPath("exceptions.tsv"));
  const G2p rules_only(ToneRules::Default(), {});
  for (const auto& e : entries) {
    try {
      EXPECT_NE(rules_only.Convert(e.word), e.pronunciation) << e.word;
    } catch (const UnresolvableWordError&) {
    }
  }
}

TEST(G2pTest, FallbackAndUnresolvable) {
  const G2p bare(ToneRules::Default(), {});
  EXPECT_THROW(bare.Convert("xyz"), UnresolvableWordError);
  const std::vector<PhonemeToneEntry> notes = {
      ParsePhonemeToneLine("xyz\tk aː 0"), ParsePhonemeToneLine("xyz\tk iː 0"),
      ParsePhonemeToneLine("xyz\tk iː 0")};
  const G2p with_fallback(ToneRules::Default(), {}, AnnotationFallback(notes));
  G2pSource source;
  const auto seq = with_fallback.Convert("xyz", &source);
  EXPECT_EQ(source, G2pSource::kFallback);
  EXPECT_EQ(seq, notes[1].pronunciation);
  EXPECT_THROW(with_fallback.Convert("abc"), UnresolvableWordError);
}

TEST(G2pTest, DeterministicAcrossThreads) {
  const auto fixture = LoadPhonemeToneAnnotations(DataPath("g2p_fixture.tsv"));
  const G2p g2p(ToneRules::Default(),
                BuildExceptionDictionary(LoadPhonemeToneAnnotations(DataPath("exceptions.tsv"))));
  std::vector<PhonemeToneSequence> serial;
  for (const auto& e : fixture) serial.push_back(g2p.Convert(e.word));
  std::vector<std::vector<PhonemeToneSequence>> outs(4);
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      for (int rep = 0; rep < 5; ++rep) {
        outs[t].clear();
        for (const auto& e : fixture) outs[t].push_back(g2p.Convert(e.word));
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& o : outs) EXPECT_EQ(o, serial);
}

}  // namespace
}  // namespace thaifront
