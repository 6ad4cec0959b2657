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

// Dictionary segmentation of unspaced Thai text.
//
// Text is cut only at extended grapheme cluster boundaries. Every token is
// either a lexicon word or a single cluster flagged out-of-vocabulary.
// Whitespace and punctuation never join a lexicon word, so they always come
// out as single-cluster OOV tokens. Among all segmentations the segmenter
// returns the one with the fewest OOV tokens, then the fewest tokens, then
// the lexicographically longest token lengths from the left.

#ifndef THAIFRONT_SEGMENTATION_H_
#define THAIFRONT_SEGMENTATION_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "thaifront/corpus_io.h"

namespace thaifront {

// Prefix index over lexicon words, keyed by code point. Immutable after Build.
class TrieIndex {
 public:
  struct Match {
    std::size_t length;  // code points
    std::uint64_t frequency;
  };

  // Throws ValidationError on an empty lexicon.
  static TrieIndex Build(const Lexicon& lexicon);

  bool Contains(std::string_view word) const;
  bool Contains(std::u32string_view word) const;

  // Lexicon words that start at text[pos], shortest first.
  std::vector<Match> PrefixMatches(std::u32string_view text, std::size_t pos) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t word_count() const { return word_count_; }
  // Longest root-to-leaf path, in code points.
  std::size_t depth() const;

 private:
  struct Node {
    std::map<char32_t, std::uint32_t> children;
    bool terminal = false;
    std::uint64_t frequency = 0;
  };

  std::int64_t Find(std::u32string_view word) const;

  std::vector<Node> nodes_;
  std::size_t word_count_ = 0;
};

struct Segmentation {
  std::vector<std::string> tokens;
  std::vector<bool> oov_flags;

  std::string Join(std::string_view sep) const;
  bool operator==(const Segmentation&) const = default;
};

enum class SegmentMode {
  kLongestMatch,
  // Between equal (oov, token) counts, prefer the larger sum of
  // log(1 + frequency), then longest match.
  kFrequency,
};

struct SegmentationCost {
  std::size_t oov_count = 0;
  std::size_t token_count = 0;
  std::vector<std::size_t> token_lengths;  // code points, left to right

  bool operator==(const SegmentationCost&) const = default;
};

SegmentationCost CostOf(const Segmentation& segmentation);
// Strict "a is better than b" under the longest-match order.
bool CostBetter(const SegmentationCost& a, const SegmentationCost& b);

Segmentation Segment(std::string_view text, const TrieIndex& trie,
                     SegmentMode mode = SegmentMode::kLongestMatch);

inline constexpr std::size_t kBruteforceMaxLength = 20;

// Every segmentation into lexicon words and single-cluster OOV tokens, best
// first. Exponential; throws ValidationError above kBruteforceMaxLength code
// points.
std::vector<Segmentation> SegmentBruteforce(std::string_view text, const Lexicon& lexicon);

// Boundary positions (code point offsets strictly inside the text) implied by
// a segmentation.
std::vector<std::size_t> TokenBoundaries(const Segmentation& segmentation);

}  // namespace thaifront

#endif  // THAIFRONT_SEGMENTATION_H_
