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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "thaifront/corpus_io.h"
#include "thaifront/pause_prediction.h"
#include "thaifront/phoneme_tone_encoding.h"
#include "thaifront/phonology.h"
#include "thaifront/pipeline.h"
#include "thaifront/segmentation.h"

namespace thaifront {
namespace {

std::string Data(const char* name) { return std::string(THAIFRONT_BENCH_DATA_DIR) + "/" + name; }

std::vector<std::string> GoldenLines() {
  const std::string text = ReadFile(Data("golden_input.txt"));
  std::vector<std::string> lines;
  for (auto l : SplitLines(text)) lines.emplace_back(l);
  return lines;
}

void BM_TrieBuild(benchmark::State& state) {
  const Lexicon lex = LoadLexicon(Data("lexicon.txt"));
  for (auto _ : state) benchmark::DoNotOptimize(TrieIndex::Build(lex));
}
BENCHMARK(BM_TrieBuild);

void BM_Segment(benchmark::State& state) {
  const TrieIndex trie = TrieIndex::Build(LoadLexicon(Data("lexicon.txt")));
  const auto lines = GoldenLines();
  std::size_t bytes = 0;
  for (auto _ : state) {
    for (const auto& l : lines) {
      benchmark::DoNotOptimize(Segment(l, trie));
      bytes += l.size();
    }
  }
  state.SetBytesProcessed(static_cast<int64_t>(bytes));
}
BENCHMARK(BM_Segment);

void BM_G2p(benchmark::State& state) {
  const auto entries = LoadPhonemeToneAnnotations(Data("g2p_fixture.tsv"));
  const G2p g2p(ToneRules::Default(), {});
  for (auto _ : state) {
    for (const auto& e : entries) benchmark::DoNotOptimize(g2p.Convert(e.word));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * entries.size()));
}
BENCHMARK(BM_G2p);

void BM_Encode(benchmark::State& state) {
  const auto entries = LoadPhonemeToneAnnotations(Data("g2p_fixture.tsv"));
  const PhonemeVocab vocab = BuildVocab(entries);
  for (auto _ : state) {
    for (const auto& e : entries) benchmark::DoNotOptimize(Encode(e.pronunciation, vocab));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * entries.size()));
}
BENCHMARK(BM_Encode);

void BM_Pipeline(benchmark::State& state) {
  const Lexicon lex = LoadLexicon(Data("lexicon.txt"));
  TrieIndex trie = TrieIndex::Build(lex);
  CountPauseModel pauses = TrainPauseModel(LoadPauseCorpus(Data("pause_corpus.txt")), trie);
  auto annotations = LoadPhonemeToneAnnotations(Data("g2p_fixture.tsv"));
  const auto exceptions = LoadPhonemeToneAnnotations(Data("exceptions.tsv"));
  annotations.insert(annotations.end(), exceptions.begin(), exceptions.end());
  const Pipeline pipeline(std::move(trie), std::move(pauses),
                          G2p(ToneRules::Default(), BuildExceptionDictionary(exceptions)),
                          BuildVocab(annotations));
  const auto lines = GoldenLines();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(RunPipeline(lines, pipeline, false, threads));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * lines.size()));
}
BENCHMARK(BM_Pipeline)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace
}  // namespace thaifront
