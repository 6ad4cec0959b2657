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

#include "thaifront/unicode.h"

#include <unicode/brkiter.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <memory>
#include <mutex>

#include "thaifront/error.h"

namespace thaifront {

namespace {

icu::UnicodeString ToUnicodeString(std::u32string_view text) {
  icu::UnicodeString out;
  for (char32_t ch : text) out.append(static_cast<UChar32>(ch));
  return out;
}

const icu::Normalizer2& Nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || nfc == nullptr) {
    throw std::runtime_error("ICU NFC normalizer unavailable");
  }
  return *nfc;
}

// BreakIterator::createCharacterInstance is costly and instances are not
// thread safe, so each thread clones one prototype.
std::unique_ptr<icu::BreakIterator> NewCharacterIterator() {
  static std::once_flag once;
  static std::unique_ptr<icu::BreakIterator> prototype;
  std::call_once(once, [] {
    UErrorCode status = U_ZERO_ERROR;
    prototype.reset(
        icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(),
                                                    status));
    if (U_FAILURE(status)) prototype.reset();
  });
  if (!prototype) throw std::runtime_error("ICU break iterator unavailable");
  return std::unique_ptr<icu::BreakIterator>(prototype->clone());
}

}  // namespace

std::u32string DecodeUtf8(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  const int32_t length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 ch;
    U8_NEXT(bytes, i, length, ch);
    if (ch < 0) {
      throw ParseError("invalid UTF-8 at byte " + std::to_string(start));
    }
    out.push_back(static_cast<char32_t>(ch));
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 3);
  for (char32_t ch : text) out += EncodeUtf8(ch);
  return out;
}

std::string EncodeUtf8(char32_t ch) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(ch), error);
  if (error) throw ValidationError("not a Unicode scalar value");
  return std::string(reinterpret_cast<const char*>(buf), n);
}

std::size_t CodePointLength(std::string_view utf8) {
  return DecodeUtf8(utf8).size();
}

std::string NormalizeNfc(std::string_view utf8) {
  // Decode first so malformed input is reported instead of replaced.
  const std::u32string decoded = DecodeUtf8(utf8);
  const icu::UnicodeString src = ToUnicodeString(decoded);
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString normalized = Nfc().normalize(src, status);
  if (U_FAILURE(status)) throw ValidationError("NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

bool IsNfc(std::string_view utf8) {
  const icu::UnicodeString src = ToUnicodeString(DecodeUtf8(utf8));
  UErrorCode status = U_ZERO_ERROR;
  const bool result = Nfc().isNormalized(src, status);
  return U_SUCCESS(status) && result;
}

std::vector<std::size_t> GraphemeBoundaries(std::u32string_view text) {
  std::vector<std::size_t> boundaries{0};
  if (text.empty()) return boundaries;
  const icu::UnicodeString utf16 = ToUnicodeString(text);
  // UTF-16 unit offset -> code point offset.
  std::vector<std::size_t> cp_index(utf16.length() + 1, 0);
  std::size_t unit = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    cp_index[unit] = i;
    unit += text[i] > 0xFFFF ? 2 : 1;
  }
  cp_index[utf16.length()] = text.size();
  auto it = NewCharacterIterator();
  it->setText(utf16);
  it->first();
  for (int32_t pos = it->next(); pos != icu::BreakIterator::DONE;
       pos = it->next()) {
    boundaries.push_back(cp_index[pos]);
  }
  if (boundaries.back() != text.size()) boundaries.push_back(text.size());
  return boundaries;
}

std::vector<std::string> GraphemeClusters(std::string_view utf8) {
  const std::u32string text = DecodeUtf8(utf8);
  const std::vector<std::size_t> bounds = GraphemeBoundaries(text);
  std::vector<std::string> clusters;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    clusters.push_back(EncodeUtf8(
        std::u32string_view(text).substr(bounds[i], bounds[i + 1] - bounds[i])));
  }
  return clusters;
}

bool IsWhitespace(char32_t ch) {
  return u_isUWhiteSpace(static_cast<UChar32>(ch));
}

bool IsBoundaryChar(char32_t ch) {
  return IsWhitespace(ch) || u_ispunct(static_cast<UChar32>(ch));
}

std::vector<std::string_view> SplitFields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace thaifront
