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

#include "thaifront/corpus_io.h"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "thaifront/error.h"
#include "thaifront/unicode.h"

namespace thaifront {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return buf.str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing '" + path + "'");
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

namespace {

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

bool ContainsWhitespace(std::string_view utf8) {
  for (char32_t ch : DecodeUtf8(utf8)) {
    if (IsWhitespace(ch)) return true;
  }
  return false;
}

template <typename T>
bool ParseInteger(std::string_view text, T* value) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, *value);
  return ec == std::errc() && ptr == end;
}

}  // namespace

// ---------------------------------------------------------------------------
// Lexicon

void Lexicon::Add(std::string word) {
  Insert(Entry{std::move(word), 1, false});
}

void Lexicon::Add(std::string word, std::uint64_t frequency) {
  Insert(Entry{std::move(word), frequency, true});
}

void Lexicon::Insert(Entry entry) {
  if (entry.word.empty()) throw ValidationError("empty lexicon word");
  if (ContainsWhitespace(entry.word)) {
    throw ValidationError("lexicon word '" + entry.word + "' contains whitespace");
  }
  if (index_.count(entry.word) != 0) {
    throw ValidationError("duplicate lexicon word '" + entry.word + "'");
  }
  index_.emplace(entry.word, entries_.size());
  entries_.push_back(std::move(entry));
}

bool Lexicon::Contains(std::string_view word) const {
  return index_.count(std::string(word)) != 0;
}

std::optional<std::uint64_t> Lexicon::Frequency(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].frequency;
}

Lexicon ParseLexicon(std::string_view content) {
  Lexicon lexicon;
  std::size_t line_number = 0;
  for (std::string_view line : SplitLines(content)) {
    ++line_number;
    if (IsBlank(line)) continue;
    const auto fields = SplitFields(line, '\t');
    if (fields.size() > 2) throw ParseError("too many TAB-separated fields", line_number);
    try {
      std::string word = NormalizeNfc(fields[0]);
      if (fields.size() == 1) {
        lexicon.Add(std::move(word));
        continue;
      }
      if (!fields[1].empty() && fields[1][0] == '-') {
        throw ParseError("negative frequency", line_number);
      }
      std::uint64_t freq = 0;
      if (!ParseInteger(fields[1], &freq)) {
        throw ParseError("frequency '" + std::string(fields[1]) +
                             "' is not a non-negative integer",
                         line_number);
      }
      lexicon.Add(std::move(word), freq);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_number);
    }
  }
  return lexicon;
}

Lexicon LoadLexicon(const std::string& path) { return ParseLexicon(ReadFile(path)); }

std::string RenderLexicon(const Lexicon& lexicon) {
  std::string out;
  for (const auto& e : lexicon.entries()) {
    out += e.word;
    if (e.explicit_frequency) {
      out += '\t';
      out += std::to_string(e.frequency);
    }
    out += '\n';
  }
  return out;
}

void SaveLexicon(const Lexicon& lexicon, const std::string& path) {
  WriteFile(path, RenderLexicon(lexicon));
}

// ---------------------------------------------------------------------------
// Pause annotations

PauseAnnotatedSentence ParsePauseAnnotation(std::string_view tagged_line,
                                            std::string_view tag) {
  if (tag.empty()) throw ValidationError("pause tag must be non-empty");
  const std::string normalized = NormalizeNfc(tagged_line);
  std::string_view line = normalized;
  PauseAnnotatedSentence sentence;
  std::size_t raw_length = 0;
  std::size_t pos = 0;
  bool previous_was_tag = false;
  while (pos <= line.size()) {
    const std::size_t hit = line.find(tag, pos);
    const std::string_view piece =
        line.substr(pos, hit == std::string_view::npos ? std::string_view::npos
                                                       : hit - pos);
    if (hit != std::string_view::npos) {
      if (hit == 0) throw ParseError("pause tag at start of line");
      if (piece.empty() && previous_was_tag) throw ParseError("adjacent pause tags");
    }
    sentence.raw_text.append(piece);
    raw_length += CodePointLength(piece);
    if (hit == std::string_view::npos) break;
    if (hit + tag.size() == line.size()) throw ParseError("pause tag at end of line");
    sentence.pause_offsets.push_back(raw_length);
    previous_was_tag = true;
    pos = hit + tag.size();
  }
  return sentence;
}

void ValidatePauseAnnotation(const PauseAnnotatedSentence& sentence) {
  const std::size_t n = CodePointLength(sentence.raw_text);
  std::size_t previous = 0;
  for (std::size_t offset : sentence.pause_offsets) {
    if (offset == 0 || offset >= n) {
      throw ValidationError("pause offset " + std::to_string(offset) +
                            " outside (0, " + std::to_string(n) + ")");
    }
    if (offset <= previous) throw ValidationError("pause offsets not strictly increasing");
    previous = offset;
  }
}

std::string RenderPauseAnnotation(const PauseAnnotatedSentence& sentence,
                                  std::string_view tag) {
  ValidatePauseAnnotation(sentence);
  const std::u32string text = DecodeUtf8(sentence.raw_text);
  std::string out;
  std::size_t start = 0;
  for (std::size_t offset : sentence.pause_offsets) {
    out += EncodeUtf8(std::u32string_view(text).substr(start, offset - start));
    out += tag;
    start = offset;
  }
  out += EncodeUtf8(std::u32string_view(text).substr(start));
  return out;
}

std::vector<PauseAnnotatedSentence> ParsePauseCorpus(std::string_view content,
                                                     std::string_view tag) {
  std::vector<PauseAnnotatedSentence> corpus;
  std::size_t line_number = 0;
  for (std::string_view line : SplitLines(content)) {
    ++line_number;
    if (IsBlank(line)) continue;
    try {
      corpus.push_back(ParsePauseAnnotation(line, tag));
    } catch (const Error& e) {
      throw ParseError(e.what(), line_number);
    }
  }
  return corpus;
}

std::vector<PauseAnnotatedSentence> LoadPauseCorpus(const std::string& path,
                                                    std::string_view tag) {
  return ParsePauseCorpus(ReadFile(path), tag);
}

std::string RenderPauseCorpus(const std::vector<PauseAnnotatedSentence>& corpus,
                              std::string_view tag) {
  std::string out;
  for (const auto& s : corpus) {
    out += RenderPauseAnnotation(s, tag);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Phoneme-tone TSV

namespace {

// Parses one syllable group, "ph ph ... D", strictly single-space separated.
Syllable ParseSyllableGroup(std::string_view group, std::size_t line_number) {
  if (group.empty()) throw ParseError("empty syllable", line_number);
  const auto parts = SplitFields(group, ' ');
  if (parts.size() < 2) {
    throw ParseError("syllable '" + std::string(group) +
                         "' needs at least one phoneme and a tone digit",
                     line_number);
  }
  Syllable syl;
  const std::string_view tone = parts.back();
  if (tone.size() != 1 || !ToneFromDigit(tone[0])) {
    throw ParseError("tone '" + std::string(tone) + "' is not a digit 0-4", line_number);
  }
  syl.tone = *ToneFromDigit(tone[0]);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const std::string_view ph = parts[i];
    if (ph.empty()) throw ParseError("empty phoneme in '" + std::string(group) + "'", line_number);
    if (ph.find('.') != std::string_view::npos || ph.find('\t') != std::string_view::npos) {
      throw ParseError("stray '.' or empty syllable in '" + std::string(group) + "'",
                       line_number);
    }
    syl.phonemes.emplace_back(ph);
  }
  return syl;
}

std::pair<std::string, std::vector<std::string_view>> SplitEntryLine(
    std::string_view line, std::size_t line_number) {
  const auto fields = SplitFields(line, '\t');
  if (fields.size() != 2) {
    throw ParseError("expected 'word<TAB>syllables'", line_number);
  }
  if (fields[0].empty()) throw ParseError("empty word", line_number);
  std::string word;
  try {
    word = NormalizeNfc(fields[0]);
  } catch (const Error& e) {
    throw ParseError(e.what(), line_number);
  }
  // Groups are separated by " . "; a bare "." or doubled separator leaves an
  // empty group behind and is rejected by the caller.
  std::vector<std::string_view> groups;
  std::string_view rest = fields[1];
  while (true) {
    const std::size_t sep = rest.find(" . ");
    if (sep == std::string_view::npos) {
      groups.push_back(rest);
      break;
    }
    groups.push_back(rest.substr(0, sep));
    rest = rest.substr(sep + 3);
  }
  return {std::move(word), std::move(groups)};
}

}  // namespace

PhonemeToneEntry ParsePhonemeToneLine(std::string_view line, std::size_t line_number) {
  auto [word, groups] = SplitEntryLine(line, line_number);
  PhonemeToneEntry entry;
  entry.word = std::move(word);
  for (std::string_view group : groups) {
    if (group == kPauseGroup) {
      throw ParseError("pause group not allowed in a word entry", line_number);
    }
    entry.pronunciation.syllables.push_back(ParseSyllableGroup(group, line_number));
  }
  return entry;
}

std::vector<PhonemeToneEntry> ParsePhonemeToneAnnotations(std::string_view content) {
  std::vector<PhonemeToneEntry> entries;
  std::size_t line_number = 0;
  for (std::string_view line : SplitLines(content)) {
    ++line_number;
    if (IsBlank(line)) continue;
    entries.push_back(ParsePhonemeToneLine(line, line_number));
  }
  return entries;
}

std::vector<PhonemeToneEntry> LoadPhonemeToneAnnotations(const std::string& path) {
  return ParsePhonemeToneAnnotations(ReadFile(path));
}

std::string RenderPhonemeToneLine(const PhonemeToneEntry& entry) {
  return entry.word + '\t' + RenderSyllables(entry.pronunciation);
}

std::string RenderPhonemeToneAnnotations(const std::vector<PhonemeToneEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += RenderPhonemeToneLine(e);
    out += '\n';
  }
  return out;
}

void SavePhonemeToneAnnotations(const std::vector<PhonemeToneEntry>& entries,
                                const std::string& path) {
  WriteFile(path, RenderPhonemeToneAnnotations(entries));
}

UtteranceLine ParseUtteranceLine(std::string_view line, std::size_t line_number) {
  auto [text, groups] = SplitEntryLine(line, line_number);
  UtteranceLine out;
  out.text = std::move(text);
  if (groups.size() == 1 && groups[0].empty()) return out;
  for (std::string_view group : groups) {
    if (group == kPauseGroup) {
      out.items.emplace_back(Pause{});
    } else {
      out.items.emplace_back(ParseSyllableGroup(group, line_number));
    }
  }
  return out;
}

std::string RenderUtteranceLine(const UtteranceLine& line) {
  return line.text + '\t' + RenderUtterance(line.items);
}

// ---------------------------------------------------------------------------
// Manifest

namespace {

std::string_view ExpectField(std::string_view field, std::string_view key,
                             std::size_t line_number) {
  if (field.size() <= key.size() || field.substr(0, key.size()) != key ||
      field[key.size()] != '=') {
    throw ParseError("expected field '" + std::string(key) + "='", line_number);
  }
  return field.substr(key.size() + 1);
}

}  // namespace

std::vector<AudioManifestRecord> ParseManifest(std::string_view content) {
  std::vector<AudioManifestRecord> records;
  std::size_t line_number = 0;
  for (std::string_view line : SplitLines(content)) {
    ++line_number;
    if (IsBlank(line)) continue;
    const auto fields = SplitFields(line, '\t');
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError("manifest record needs 3 or 4 fields", line_number);
    }
    AudioManifestRecord r;
    r.audio_path = std::string(ExpectField(fields[0], "audio_path", line_number));
    r.transcript = NormalizeNfc(ExpectField(fields[1], "transcript", line_number));
    if (r.transcript.empty()) throw ParseError("empty transcript", line_number);
    if (!ParseInteger(ExpectField(fields[2], "sample_rate", line_number), &r.sample_rate) ||
        r.sample_rate <= 0) {
      throw ParseError("sample_rate must be a positive integer", line_number);
    }
    if (fields.size() == 4) {
      r.alignment_path = std::string(ExpectField(fields[3], "alignment_path", line_number));
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<AudioManifestRecord> LoadManifest(const std::string& path) {
  return ParseManifest(ReadFile(path));
}

std::string RenderManifest(const std::vector<AudioManifestRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += "audio_path=" + r.audio_path + "\ttranscript=" + r.transcript +
           "\tsample_rate=" + std::to_string(r.sample_rate);
    if (r.alignment_path) out += "\talignment_path=" + *r.alignment_path;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Alignment

std::vector<AlignmentRow> ParseAlignment(std::string_view content) {
  std::vector<AlignmentRow> rows;
  std::size_t line_number = 0;
  for (std::string_view line : SplitLines(content)) {
    ++line_number;
    if (IsBlank(line)) continue;
    const auto fields = SplitFields(line, '\t');
    if (fields.size() != 2 || fields[0].empty()) {
      throw ParseError("expected 'phoneme<TAB>frames'", line_number);
    }
    AlignmentRow row{std::string(fields[0]), 0};
    if (!ParseInteger(fields[1], &row.frames) || row.frames < 0) {
      throw ParseError("frame count must be a non-negative integer", line_number);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<AlignmentRow> LoadAlignment(const std::string& path) {
  return ParseAlignment(ReadFile(path));
}

std::string RenderAlignment(const std::vector<AlignmentRow>& rows) {
  std::string out;
  for (const auto& r : rows) out += r.phoneme + '\t' + std::to_string(r.frames) + '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Feature records

namespace {

constexpr char kFeatureMagic[8] = {'T', 'H', 'F', 'F', 'E', 'A', 'T', '\0'};
constexpr std::size_t kSectionNameBytes = 16;

void PutU32(std::uint32_t v, std::string* out) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t GetU32(std::string_view bytes, std::size_t* pos) {
  if (*pos + 4 > bytes.size()) throw ParseError("truncated feature record");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[*pos + i])) << (8 * i);
  }
  *pos += 4;
  return v;
}

}  // namespace

std::string SerializeFeatureRecord(const FeatureRecord& record) {
  std::string out(kFeatureMagic, sizeof(kFeatureMagic));
  PutU32(kFeatureRecordVersion, &out);
  PutU32(static_cast<std::uint32_t>(record.size()), &out);
  for (const auto& [name, section] : record) {
    if (name.empty() || name.size() >= kSectionNameBytes) {
      throw ValidationError("feature section name '" + name + "' must be 1-15 bytes");
    }
    if (section.data.size() != section.rows * section.cols) {
      throw ValidationError("feature section '" + name + "' has inconsistent shape");
    }
    std::string padded = name;
    padded.resize(kSectionNameBytes, '\0');
    out += padded;
    PutU32(static_cast<std::uint32_t>(section.rows), &out);
    PutU32(static_cast<std::uint32_t>(section.cols), &out);
    for (float f : section.data) PutU32(std::bit_cast<std::uint32_t>(f), &out);
  }
  return out;
}

FeatureRecord DeserializeFeatureRecord(std::string_view bytes) {
  if (bytes.size() < sizeof(kFeatureMagic) ||
      std::memcmp(bytes.data(), kFeatureMagic, sizeof(kFeatureMagic)) != 0) {
    throw ParseError("not a feature record (bad magic)");
  }
  std::size_t pos = sizeof(kFeatureMagic);
  const std::uint32_t version = GetU32(bytes, &pos);
  if (version != kFeatureRecordVersion) {
    throw ParseError("unsupported feature record version " + std::to_string(version));
  }
  const std::uint32_t count = GetU32(bytes, &pos);
  FeatureRecord record;
  for (std::uint32_t s = 0; s < count; ++s) {
    if (pos + kSectionNameBytes > bytes.size()) throw ParseError("truncated feature record");
    std::string name(bytes.substr(pos, kSectionNameBytes));
    name.resize(std::strlen(name.c_str()));
    pos += kSectionNameBytes;
    FeatureSection section;
    section.rows = GetU32(bytes, &pos);
    section.cols = GetU32(bytes, &pos);
    const std::size_t n = section.rows * section.cols;
    if ((bytes.size() - pos) / 4 < n) throw ParseError("truncated feature record");
    section.data.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      section.data[i] = std::bit_cast<float>(GetU32(bytes, &pos));
    }
    if (!record.emplace(name, std::move(section)).second) {
      throw ParseError("duplicate feature section '" + name + "'");
    }
  }
  if (pos != bytes.size()) throw ParseError("trailing bytes after feature record");
  return record;
}

void SaveFeatureRecord(const FeatureRecord& record, const std::string& path) {
  WriteFile(path, SerializeFeatureRecord(record));
}

FeatureRecord LoadFeatureRecord(const std::string& path) {
  return DeserializeFeatureRecord(ReadFile(path));
}

}  // namespace thaifront
