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

// eval: scores line-aligned reference and hypothesis files.

#include <filesystem>
#include <memory>
#include <sstream>

#include "cli_common.h"
#include "json.hpp"
#include "thaifront/corpus_io.h"
#include "thaifront/error.h"
#include "thaifront/evaluation.h"
#include "thaifront/unicode.h"

namespace thaifront {
namespace cli {

namespace {

using nlohmann::json;

std::vector<double> ParseVector(std::string_view line, std::size_t line_number) {
  std::vector<double> v;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ParseError("bad number '" + tok + "'", line_number);
    v.push_back(x);
  }
  return v;
}

Segmentation ParseSegmentationLine(std::string_view line, std::string_view sep) {
  Segmentation s;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    s.tokens.emplace_back(NormalizeNfc(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    s.oov_flags.push_back(false);
    if (pos == std::string_view::npos) break;
    start = pos + sep.size();
  }
  return s;
}

struct EvalArgs {
  std::string task;
  std::string ref;
  std::string hyp;
  std::string report;
  std::string sep = "|";
};

int RunEval(const EvalArgs& args) {
  std::vector<std::string> ref;
  std::vector<std::string> hyp;
  const std::string ref_text = ReadFile(args.ref);
  const std::string hyp_text = ReadFile(args.hyp);
  for (std::string_view l : SplitLines(ref_text)) ref.emplace_back(l);
  for (std::string_view l : SplitLines(hyp_text)) hyp.emplace_back(l);
  if (ref.size() != hyp.size()) {
    throw ValidationError("reference has " + std::to_string(ref.size()) +
                          " lines, hypothesis has " + std::to_string(hyp.size()));
  }
  json items = json::array();
  json aggregate = json::object();
  double score_sum = 0.0;
  if (args.task == "wer" || args.task == "cer") {
    std::size_t edits = 0;
    std::size_t length = 0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const ErrorRate r = args.task == "wer" ? Wer(SplitWords(ref[i]), SplitWords(hyp[i]))
                                             : Cer(NormalizeNfc(ref[i]), NormalizeNfc(hyp[i]));
      edits += r.ops.Distance();
      length += r.ref_length;
      score_sum += r.rate;
      items.push_back({{"line", i + 1},
                       {"rate", r.rate},
                       {"substitutions", r.ops.substitutions},
                       {"insertions", r.ops.insertions},
                       {"deletions", r.ops.deletions},
                       {"ref_length", r.ref_length}});
    }
    aggregate["corpus_rate"] = length == 0 ? 0.0 : static_cast<double>(edits) / length;
  } else if (args.task == "stoi") {
    const std::string base_ref = std::filesystem::path(args.ref).parent_path().string();
    const std::string base_hyp = std::filesystem::path(args.hyp).parent_path().string();
    auto resolve = [](const std::string& base, const std::string& p) {
      return std::filesystem::path(p).is_absolute() || base.empty()
                 ? p
                 : (std::filesystem::path(base) / p).string();
    };
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const double s = Stoi(ReadWav(resolve(base_ref, ref[i])), ReadWav(resolve(base_hyp, hyp[i])));
      score_sum += s;
      items.push_back({{"line", i + 1}, {"stoi", s}});
    }
  } else if (args.task == "sim") {
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const double s = CosineSim(ParseVector(ref[i], i + 1), ParseVector(hyp[i], i + 1));
      score_sum += s;
      items.push_back({{"line", i + 1}, {"cosine", s}});
    }
  } else if (args.task == "seg") {
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const PrfScore s = SegmentationF1(ParseSegmentationLine(ref[i], args.sep),
                                        ParseSegmentationLine(hyp[i], args.sep));
      score_sum += s.f1;
      items.push_back({{"line", i + 1}, {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}});
    }
  } else {
    throw CLI::ValidationError("--task", "must be one of wer, cer, stoi, sim, seg");
  }
  aggregate["items"] = ref.size();
  aggregate["mean"] = ref.empty() ? 0.0 : score_sum / static_cast<double>(ref.size());

  std::cout << args.task << " items=" << ref.size() << " mean=" << aggregate["mean"].get<double>();
  if (aggregate.contains("corpus_rate")) {
    std::cout << " corpus_rate=" << aggregate["corpus_rate"].get<double>();
  }
  std::cout << '\n';
  if (!args.report.empty()) {
    const StoiConfig stoi;
    json config = {{"task", args.task}, {"ref", args.ref}, {"hyp", args.hyp}};
    if (args.task == "seg") config["sep"] = args.sep;
    if (args.task == "stoi") {
      config["stoi"] = {{"sample_rate", stoi.sample_rate}, {"frame_length", stoi.frame_length},
                        {"fft_size", stoi.fft_size},       {"num_bands", stoi.num_bands},
                        {"min_freq", stoi.min_freq},       {"segment_frames", stoi.segment_frames},
                        {"beta_db", stoi.beta_db},         {"dynamic_range_db", stoi.dynamic_range_db}};
    }
    const json report = {{"config", config}, {"items", items}, {"aggregate", aggregate}};
    WriteFile(args.report, report.dump(2) + "\n");
  }
  return kExitOk;
}

}  // namespace

void RegisterEvalCommand(CLI::App* app, Action* action) {
  auto args = std::make_shared<EvalArgs>();
  CLI::App* sub = app->add_subcommand("eval", "Score hypothesis lines against references");
  AddOption(sub, "task", args->task, "wer, cer, stoi, sim or seg")
      ->required()
      ->check(CLI::IsMember({"wer", "cer", "stoi", "sim", "seg"}));
  AddOption(sub, "ref", args->ref, "Reference file")->required();
  AddOption(sub, "hyp", args->hyp, "Hypothesis file")->required();
  AddOption(sub, "report", args->report, "Write a JSON report here");
  AddOption(sub, "sep", args->sep, "Token separator for seg");
  sub->callback([args, action] { *action = [args] { return RunEval(*args); }; });
}

}  // namespace cli
}  // namespace thaifront
