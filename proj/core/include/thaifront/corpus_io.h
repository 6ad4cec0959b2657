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

// Readers and writers for every text and binary format the pipeline consumes.
//
// Each text format has a canonical rendering. Loading a canonical file and
// rendering it again reproduces the file byte for byte. Text is NFC
// normalized on load. Positions are code point indices.

#ifndef THAIFRONT_CORPUS_IO_H_
#define THAIFRONT_CORPUS_IO_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "thaifront/phoneme_tone.h"

namespace thaifront {

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

// Splits text into lines. A final newline does not produce an empty line and
// a trailing '\r' is dropped from each line.
std::vector<std::string_view> SplitLines(std::string_view text);

// ---------------------------------------------------------------------------
// Lexicon: "word[\tfreq]\n"

class Lexicon {
 public:
  struct Entry {
    std::string word;
    std::uint64_t frequency = 1;
    // False when the frequency column was absent in the source file.
    bool explicit_frequency = false;
  };

  // Throws ValidationError for empty words, words with whitespace and
  // duplicates.
  void Add(std::string word);
  void Add(std::string word, std::uint64_t frequency);

  bool Contains(std::string_view word) const;
  std::optional<std::uint64_t> Frequency(std::string_view word) const;

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  void Insert(Entry entry);

  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

Lexicon ParseLexicon(std::string_view content);
Lexicon LoadLexicon(const std::string& path);
std::string RenderLexicon(const Lexicon& lexicon);
void SaveLexicon(const Lexicon& lexicon, const std::string& path);

// ---------------------------------------------------------------------------
// Pause corpus: one tagged sentence per line.

inline constexpr std::string_view kDefaultPauseTag = "<SPACE>";

struct PauseAnnotatedSentence {
  std::string raw_text;
  // Strictly increasing code point offsets into raw_text, each in
  // (0, length).
  std::vector<std::size_t> pause_offsets;

  bool operator==(const PauseAnnotatedSentence&) const = default;
};

// Throws ParseError on a leading, trailing or doubled tag.
PauseAnnotatedSentence ParsePauseAnnotation(std::string_view tagged_line,
                                            std::string_view tag = kDefaultPauseTag);
std::string RenderPauseAnnotation(const PauseAnnotatedSentence& sentence,
                                  std::string_view tag = kDefaultPauseTag);
// Throws ValidationError when the offsets break the invariants.
void ValidatePauseAnnotation(const PauseAnnotatedSentence& sentence);

std::vector<PauseAnnotatedSentence> ParsePauseCorpus(
    std::string_view content, std::string_view tag = kDefaultPauseTag);
std::vector<PauseAnnotatedSentence> LoadPauseCorpus(
    const std::string& path, std::string_view tag = kDefaultPauseTag);
std::string RenderPauseCorpus(const std::vector<PauseAnnotatedSentence>& corpus,
                              std::string_view tag = kDefaultPauseTag);

// ---------------------------------------------------------------------------
// Phoneme-tone TSV: "word\tph ph 0 . ph ph 3"

struct PhonemeToneEntry {
  std::string word;
  PhonemeToneSequence pronunciation;

  bool operator==(const PhonemeToneEntry&) const = default;
};

// `line_number` only decorates error messages.
PhonemeToneEntry ParsePhonemeToneLine(std::string_view line,
                                      std::size_t line_number = 0);
std::vector<PhonemeToneEntry> ParsePhonemeToneAnnotations(std::string_view content);
std::vector<PhonemeToneEntry> LoadPhonemeToneAnnotations(const std::string& path);
std::string RenderPhonemeToneLine(const PhonemeToneEntry& entry);
std::string RenderPhonemeToneAnnotations(const std::vector<PhonemeToneEntry>& entries);
void SavePhonemeToneAnnotations(const std::vector<PhonemeToneEntry>& entries,
                                const std::string& path);

// Sentence-level variant of the same line grammar, where a syllable group may
// be the literal "<pause>" and the syllable field may be empty for text with
// nothing to pronounce. Used to pass whole utterances between stages.
struct UtteranceLine {
  std::string text;
  Utterance items;

  bool operator==(const UtteranceLine&) const = default;
};

UtteranceLine ParseUtteranceLine(std::string_view line, std::size_t line_number = 0);
std::string RenderUtteranceLine(const UtteranceLine& line);

// ---------------------------------------------------------------------------
// Audio manifest: one record per line,
// "audio_path=...\ttranscript=...\tsample_rate=N[\talignment_path=...]".

struct AudioManifestRecord {
  std::string audio_path;
  std::string transcript;
  int sample_rate = 24000;
  std::optional<std::string> alignment_path;

  bool operator==(const AudioManifestRecord&) const = default;
};

std::vector<AudioManifestRecord> ParseManifest(std::string_view content);
std::vector<AudioManifestRecord> LoadManifest(const std::string& path);
std::string RenderManifest(const std::vector<AudioManifestRecord>& records);

// ---------------------------------------------------------------------------
// Alignment: "phoneme\tframe_count" per line.

struct AlignmentRow {
  std::string phoneme;
  int frames = 0;

  bool operator==(const AlignmentRow&) const = default;
};

std::vector<AlignmentRow> ParseAlignment(std::string_view content);
std::vector<AlignmentRow> LoadAlignment(const std::string& path);
std::string RenderAlignment(const std::vector<AlignmentRow>& rows);

// ---------------------------------------------------------------------------
// Feature record: binary, little endian.
//
//   magic   "THFFEAT\0"          8 bytes
//   version uint32 (= 1)
//   count   uint32               number of sections
//   per section:
//     name  16 bytes, ASCII, NUL padded
//     rows  uint32
//     cols  uint32
//     data  rows * cols float32, row-major

struct FeatureSection {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> data;

  bool operator==(const FeatureSection&) const = default;
};

inline constexpr std::uint32_t kFeatureRecordVersion = 1;

using FeatureRecord = std::map<std::string, FeatureSection>;

std::string SerializeFeatureRecord(const FeatureRecord& record);
FeatureRecord DeserializeFeatureRecord(std::string_view bytes);
void SaveFeatureRecord(const FeatureRecord& record, const std::string& path);
FeatureRecord LoadFeatureRecord(const std::string& path);

}  // namespace thaifront

#endif  // THAIFRONT_CORPUS_IO_H_
