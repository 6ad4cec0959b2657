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

#include "thaifront/segmentation.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <set>

#include "thaifront/error.h"
#include "thaifront/unicode.h"

namespace thaifront {

TrieIndex TrieIndex::Build(const Lexicon& lexicon) {
  if (lexicon.empty()) throw ValidationError("cannot build a trie from an empty lexicon");
  TrieIndex trie;
  trie.nodes_.emplace_back();
  for (const auto& entry : lexicon.entries()) {
    std::uint32_t node = 0;
    for (char32_t ch : DecodeUtf8(entry.word)) {
      auto it = trie.nodes_[node].children.find(ch);
      if (it == trie.nodes_[node].children.end()) {
        const auto child = static_cast<std::uint32_t>(trie.nodes_.size());
        trie.nodes_[node].children.emplace(ch, child);
        trie.nodes_.emplace_back();
        node = child;
      } else {
        node = it->second;
      }
    }
    trie.nodes_[node].terminal = true;
    trie.nodes_[node].frequency = entry.frequency;
    ++trie.word_count_;
  }
  return trie;
}

std::int64_t TrieIndex::Find(std::u32string_view word) const {
  std::uint32_t node = 0;
  for (char32_t ch : word) {
    auto it = nodes_[node].children.find(ch);
    if (it == nodes_[node].children.end()) return -1;
    node = it->second;
  }
  return node;
}

bool TrieIndex::Contains(std::u32string_view word) const {
  if (word.empty()) return false;
  const std::int64_t node = Find(word);
  return node >= 0 && nodes_[node].terminal;
}

bool TrieIndex::Contains(std::string_view word) const { return Contains(DecodeUtf8(word)); }

std::vector<TrieIndex::Match> TrieIndex::PrefixMatches(std::u32string_view text,
                                                       std::size_t pos) const {
  std::vector<Match> matches;
  std::uint32_t node = 0;
  for (std::size_t i = pos; i < text.size(); ++i) {
    auto it = nodes_[node].children.find(text[i]);
    if (it == nodes_[node].children.end()) break;
    node = it->second;
    if (nodes_[node].terminal) matches.push_back({i - pos + 1, nodes_[node].frequency});
  }
  return matches;
}

std::size_t TrieIndex::depth() const {
  std::function<std::size_t(std::uint32_t)> visit = [&](std::uint32_t n) -> std::size_t {
    std::size_t best = 0;
    for (const auto& [ch, child] : nodes_[n].children) best = std::max(best, 1 + visit(child));
    return best;
  };
  return visit(0);
}

std::string Segmentation::Join(std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += sep;
    out += tokens[i];
  }
  return out;
}

SegmentationCost CostOf(const Segmentation& segmentation) {
  SegmentationCost cost;
  cost.token_count = segmentation.tokens.size();
  for (std::size_t i = 0; i < segmentation.tokens.size(); ++i) {
    if (segmentation.oov_flags[i]) ++cost.oov_count;
    cost.token_lengths.push_back(CodePointLength(segmentation.tokens[i]));
  }
  return cost;
}

bool CostBetter(const SegmentationCost& a, const SegmentationCost& b) {
  if (a.oov_count != b.oov_count) return a.oov_count < b.oov_count;
  if (a.token_count != b.token_count) return a.token_count < b.token_count;
  // Longer earlier tokens win.
  return std::lexicographical_compare(b.token_lengths.begin(), b.token_lengths.end(),
                                      a.token_lengths.begin(), a.token_lengths.end());
}

namespace {

bool HasBoundaryChar(std::u32string_view s) {
  return std::any_of(s.begin(), s.end(), IsBoundaryChar);
}

}  // namespace

Segmentation Segment(std::string_view text, const TrieIndex& trie, SegmentMode mode) {
  const std::u32string t = DecodeUtf8(text);
  const std::vector<std::size_t> bounds = GraphemeBoundaries(t);
  const std::size_t k_end = bounds.size() - 1;
  // Position -> boundary index, or npos for positions inside a cluster.
  std::vector<std::size_t> bound_index(t.size() + 1, std::string::npos);
  for (std::size_t k = 0; k < bounds.size(); ++k) bound_index[bounds[k]] = k;

  struct State {
    std::size_t oov = 0;
    std::size_t tokens = 0;
    double score = 0.0;  // frequency mode only
    std::size_t next = 0;  // boundary index after the first token
    bool first_oov = false;
  };
  std::vector<State> best(bounds.size());
  for (std::size_t k = k_end; k-- > 0;) {
    const std::size_t pos = bounds[k];
    std::optional<State> chosen;
    auto consider = [&](std::size_t next, bool oov, double gain) {
      State s{best[next].oov + (oov ? 1 : 0), best[next].tokens + 1,
              best[next].score + gain, next, oov};
      if (!chosen) {
        chosen = s;
        return;
      }
      const State& c = *chosen;
      if (s.oov != c.oov) {
        if (s.oov < c.oov) chosen = s;
        return;
      }
      if (s.tokens != c.tokens) {
        if (s.tokens < c.tokens) chosen = s;
        return;
      }
      if (mode == SegmentMode::kFrequency && s.score != c.score) {
        if (s.score > c.score) chosen = s;
        return;
      }
      if (s.next > c.next) chosen = s;
    };
    consider(k + 1, true, 0.0);
    for (const auto& m : trie.PrefixMatches(t, pos)) {
      const std::size_t next = bound_index[pos + m.length];
      if (next == std::string::npos) continue;
      if (HasBoundaryChar(std::u32string_view(t).substr(pos, m.length))) continue;
      consider(next, false, std::log1p(static_cast<double>(m.frequency)));
    }
    best[k] = *chosen;
  }

  Segmentation seg;
  for (std::size_t k = 0; k < k_end; k = best[k].next) {
    const std::size_t next = best[k].next;
    seg.tokens.push_back(
        EncodeUtf8(std::u32string_view(t).substr(bounds[k], bounds[next] - bounds[k])));
    seg.oov_flags.push_back(best[k].first_oov);
  }
  return seg;
}

std::vector<Segmentation> SegmentBruteforce(std::string_view text, const Lexicon& lexicon) {
  const std::u32string t = DecodeUtf8(text);
  if (t.size() > kBruteforceMaxLength) {
    throw ValidationError("brute-force segmentation limited to " +
                          std::to_string(kBruteforceMaxLength) + " code points");
  }
  std::set<std::u32string> words;
  for (const auto& e : lexicon.entries()) words.insert(DecodeUtf8(e.word));
  const std::vector<std::size_t> bounds = GraphemeBoundaries(t);

  std::vector<Segmentation> all;
  Segmentation current;
  // Recursive enumeration over the boundary index of the next token start.
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (k + 1 == bounds.size()) {
      all.push_back(current);
      return;
    }
    for (std::size_t j = k + 1; j < bounds.size(); ++j) {
      const std::u32string piece = t.substr(bounds[k], bounds[j] - bounds[k]);
      const bool in_lexicon = words.count(piece) != 0 && !HasBoundaryChar(piece);
      const bool single_cluster = j == k + 1;
      // A single cluster that is also a word is only listed once, as a word.
      if (!in_lexicon && !single_cluster) continue;
      current.tokens.push_back(EncodeUtf8(piece));
      current.oov_flags.push_back(!in_lexicon);
      extend(j);
      current.tokens.pop_back();
      current.oov_flags.pop_back();
    }
  };
  extend(0);

  std::vector<std::pair<SegmentationCost, std::size_t>> keyed;
  for (std::size_t i = 0; i < all.size(); ++i) keyed.emplace_back(CostOf(all[i]), i);
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return CostBetter(a.first, b.first); });
  std::vector<Segmentation> sorted;
  sorted.reserve(all.size());
  for (const auto& [cost, i] : keyed) sorted.push_back(std::move(all[i]));
  return sorted;
}

std::vector<std::size_t> TokenBoundaries(const Segmentation& segmentation) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < segmentation.tokens.size(); ++i) {
    pos += CodePointLength(segmentation.tokens[i]);
    out.push_back(pos);
  }
  return out;
}

}  // namespace thaifront
