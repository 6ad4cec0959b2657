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

// UTF-8 helpers backed by ICU. All text positions exposed by the library are
// Unicode code point indices, never byte offsets.

#ifndef THAIFRONT_UNICODE_H_
#define THAIFRONT_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace thaifront {

// Decodes UTF-8; throws ParseError on malformed input.
std::u32string DecodeUtf8(std::string_view utf8);
std::string EncodeUtf8(std::u32string_view text);
std::string EncodeUtf8(char32_t ch);

std::size_t CodePointLength(std::string_view utf8);

std::string NormalizeNfc(std::string_view utf8);
bool IsNfc(std::string_view utf8);

// Extended grapheme cluster boundaries as code point offsets, including 0 and
// text.size(). Empty text yields {0}.
std::vector<std::size_t> GraphemeBoundaries(std::u32string_view text);

// Splits into extended grapheme clusters.
std::vector<std::string> GraphemeClusters(std::string_view utf8);

bool IsWhitespace(char32_t ch);
// Whitespace or any Unicode punctuation; such characters never join words.
bool IsBoundaryChar(char32_t ch);

// Splits on a single-byte separator, keeping empty fields.
std::vector<std::string_view> SplitFields(std::string_view line, char sep);

}  // namespace thaifront

#endif  // THAIFRONT_UNICODE_H_
