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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "pipeline_fixture.h"
#include "test_util.h"
#include "thaifront/audio_features.h"
#include "thaifront/corpus_io.h"
#include "thaifront/pipeline.h"
#include "thaifront/prosody_model.h"
#include "thaifront/segmentation.h"

namespace thaifront {
namespace {

using testing::CliPath;
using testing::CommandResult;
using testing::DataPath;
using testing::RunCommand;
using testing::ShellQuote;
using testing::TempDir;

std::string Cli() { return ShellQuote(CliPath()); }

std::string Lexicon() { return ShellQuote(DataPath("lexicon.txt")); }

void Write(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

// Keeps a clean environment for the option variables these tests touch.
class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (const char* name : {"THAIFRONT_SEP", "THAIFRONT_LEXICON", "THAIFRONT_MODE",
                             "THAIFRONT_LOG_LEVEL"}) {
      ::unsetenv(name);
    }
  }
};

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(RunCommand(Cli() + " --help").exit_code, 0);
  EXPECT_EQ(RunCommand(Cli() + " segment --help").exit_code, 0);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(RunCommand(Cli()).exit_code, 1);
  EXPECT_EQ(RunCommand(Cli() + " nosuchcommand").exit_code, 1);
  EXPECT_EQ(RunCommand(Cli() + " segment </dev/null").exit_code, 1);
  EXPECT_EQ(RunCommand(Cli() + " segment --lexicon " + Lexicon() + " --bogus </dev/null").exit_code, 1);
  EXPECT_EQ(RunCommand(Cli() + " eval --task nope --ref /dev/null --hyp /dev/null").exit_code, 1);
}

TEST_F(CliTest, MissingDataFileExitsTwo) {
  EXPECT_EQ(RunCommand(Cli() + " segment --lexicon /nonexistent/lex.txt </dev/null").exit_code, 2);
}

TEST_F(CliTest, SegmentMatchesLibrary) {
  const CommandResult r =
      RunCommand("printf '%s\\n' 'กินข้าว' '' | " + Cli() + " segment --lexicon " + Lexicon());
  ASSERT_EQ(r.exit_code, 0);
  const TrieIndex trie = TrieIndex::Build(LoadLexicon(DataPath("lexicon.txt")));
  EXPECT_EQ(r.out, Segment("กินข้าว", trie).Join("|") + "\n\n");
  EXPECT_EQ(r.out, "กิน|ข้าว\n\n");
}

TEST_F(CliTest, EnvironmentOverridesDefault) {
  const CommandResult r = RunCommand("echo กินข้าว | THAIFRONT_SEP=/ " + Cli() + " segment --lexicon " +
                                     Lexicon());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "กิน/ข้าว\n");
  const CommandResult lex =
      RunCommand("echo กินข้าว | THAIFRONT_LEXICON=" + Lexicon() + " " + Cli() + " segment");
  ASSERT_EQ(lex.exit_code, 0);
  EXPECT_EQ(lex.out, "กิน|ข้าว\n");
}

TEST_F(CliTest, PrecedenceFlagThenEnvThenConfig) {
  TempDir dir;
  const std::string config = dir.File("cfg.ini");
  Write(config, "# defaults\nsep = +\nlexicon = \"" + DataPath("lexicon.txt") + "\"\n");
  const std::string base = "echo กินข้าว | ";
  const std::string cmd = Cli() + " --config " + ShellQuote(config) + " segment";
  EXPECT_EQ(RunCommand(base + cmd).out, "กิน+ข้าว\n");
  EXPECT_EQ(RunCommand(base + "THAIFRONT_SEP=/ " + cmd).out, "กิน/ข้าว\n");
  EXPECT_EQ(RunCommand(base + "THAIFRONT_SEP=/ " + cmd + " --sep ,").out, "กิน,ข้าว\n");
}

TEST_F(CliTest, ConfigKeysWithUnderscores) {
  TempDir dir;
  const std::string config = dir.File("cfg.ini");
  Write(config, "log_level = off\nsep = _\n");
  const CommandResult r = RunCommand("echo กินข้าว | " + Cli() + " --config " + ShellQuote(config) +
                                     " segment --lexicon " + Lexicon());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "กิน_ข้าว\n");
}

TEST_F(CliTest, BadConfigExitsOne) {
  TempDir dir;
  const std::string unknown = dir.File("unknown.ini");
  Write(unknown, "no_such_key = 1\n");
  EXPECT_EQ(RunCommand(Cli() + " --config " + ShellQuote(unknown) + " segment --lexicon " + Lexicon() +
                       " </dev/null")
                .exit_code,
            1);
  const std::string malformed = dir.File("malformed.ini");
  Write(malformed, "sep\n");
  EXPECT_EQ(RunCommand(Cli() + " --config " + ShellQuote(malformed) + " segment --lexicon " + Lexicon() +
                       " </dev/null")
                .exit_code,
            1);
}

TEST_F(CliTest, BadLineKeepsGoingUnlessStrict) {
  TempDir dir;
  const std::string input = dir.File("in.txt");
  Write(input, "กิน<pause>ข้าว\n<pause>กิน\nข้าว\n");
  const std::string cmd = Cli() + " segment --pause-tag '<pause>' --lexicon " + Lexicon();
  const CommandResult lenient = RunCommand(cmd + " < " + ShellQuote(input));
  EXPECT_EQ(lenient.exit_code, 0);
  EXPECT_EQ(lenient.out, "กิน|<pause>|ข้าว\n\nข้าว\n");
  const CommandResult strict = RunCommand(cmd + " --strict < " + ShellQuote(input));
  EXPECT_EQ(strict.exit_code, 2);
  EXPECT_EQ(strict.out, "กิน|<pause>|ข้าว\n");
}

class CliPipelineTest : public CliTest {
 protected:
  static void SetUpTestSuite() { fixture_ = new testing::PipelineFixture(); }
  static void TearDownTestSuite() {
    delete fixture_;
    fixture_ = nullptr;
  }

  static std::string PipelineFlags() {
    const PipelineConfig cfg = fixture_->Config();
    return " --lexicon " + ShellQuote(cfg.lexicon_path) + " --pause-model " +
           ShellQuote(cfg.pause_model_path) + " --exceptions " + ShellQuote(cfg.exceptions_path) +
           " --vocab " + ShellQuote(cfg.vocab_path);
  }

  static testing::PipelineFixture* fixture_;
};

testing::PipelineFixture* CliPipelineTest::fixture_ = nullptr;

TEST_F(CliPipelineTest, EmptyInputGivesEmptyOutput) {
  const CommandResult r = RunCommand(Cli() + " pipeline" + PipelineFlags() + " </dev/null");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "");
}

TEST_F(CliPipelineTest, MatchesLibrary) {
  const PipelineConfig cfg = fixture_->Config();
  const Pipeline pipeline = Pipeline::Load(cfg);
  const auto result = pipeline.ProcessLine("กินข้าวแล้วนอน");
  const CommandResult r =
      RunCommand("echo กินข้าวแล้วนอน | " + Cli() + " pipeline" + PipelineFlags());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, RenderIds(result.encoded) + "\n");
}

TEST_F(CliPipelineTest, FailedLineIsBlankUnlessStrict) {
  TempDir dir;
  const std::string input = dir.File("in.txt");
  Write(input, "กินข้าว\nกินข้าว abc\nนอน\n");
  const CommandResult lenient =
      RunCommand(Cli() + " pipeline" + PipelineFlags() + " < " + ShellQuote(input));
  EXPECT_EQ(lenient.exit_code, 0);
  std::istringstream lines(lenient.out);
  std::string a, b, c;
  std::getline(lines, a);
  std::getline(lines, b);
  std::getline(lines, c);
  EXPECT_FALSE(a.empty());
  EXPECT_TRUE(b.empty());
  EXPECT_FALSE(c.empty());
  EXPECT_EQ(RunCommand(Cli() + " pipeline --strict" + PipelineFlags() + " < " + ShellQuote(input))
                .exit_code,
            2);
}

TEST_F(CliPipelineTest, ValidateReportsFailures) {
  const CommandResult ok = RunCommand(Cli() + " validate" + PipelineFlags());
  EXPECT_EQ(ok.exit_code, 0);
  EXPECT_EQ(ok.out.find("failure"), std::string::npos);
  const CommandResult bad =
      RunCommand(Cli() + " validate --lexicon /nonexistent/lex.txt --threshold 2");
  EXPECT_EQ(bad.exit_code, 2);
  EXPECT_NE(bad.out.find("failure\tlexicon\t"), std::string::npos);
  EXPECT_NE(bad.out.find("failure\tthreshold\t"), std::string::npos);
}

TEST_F(CliPipelineTest, FeaturesTrainAndStoi) {
  TempDir dir;
  const std::string text = dir.File("text.txt");
  Write(text, "กินข้าว\nนอน\nกินข้าวแล้วนอน\n");
  const CommandResult ids = RunCommand(Cli() + " pipeline" + PipelineFlags() + " < " + ShellQuote(text));
  ASSERT_EQ(ids.exit_code, 0);
  Write(dir.File("encoded.txt"), ids.out);

  std::string manifest;
  for (int i = 0; i < 3; ++i) {
    Waveform w;
    w.sample_rate = 24000;
    w.samples.resize(12000 + 4000 * i);
    for (std::size_t k = 0; k < w.samples.size(); ++k) {
      w.samples[k] = static_cast<float>(0.3 * std::sin(2 * 3.14159265358979 * (150.0 + 20 * i) * k / 24000.0));
    }
    const std::string name = "u" + std::to_string(i) + ".wav";
    WriteWav(dir.File(name), w);
    manifest += "audio_path=" + name + "\ttranscript=x\tsample_rate=24000\n";
  }
  Write(dir.File("manifest.txt"), manifest);

  const std::string feats = dir.File("feats");
  ASSERT_EQ(RunCommand(Cli() + " features --manifest " + ShellQuote(dir.File("manifest.txt")) + " --out " +
                       ShellQuote(feats) + " --encoded " + ShellQuote(dir.File("encoded.txt")))
                .exit_code,
            0);
  const std::string train = Cli() + " train --features " + ShellQuote(feats) + " --encoded " +
                            ShellQuote(dir.File("encoded.txt")) + " --vocab " +
                            ShellQuote(fixture_->vocab_path()) + " --steps 50 --seed 3 --out ";
  ASSERT_EQ(RunCommand(train + ShellQuote(dir.File("a.model"))).exit_code, 0);
  ASSERT_EQ(RunCommand(train + ShellQuote(dir.File("b.model"))).exit_code, 0);
  EXPECT_EQ(ReadFile(dir.File("a.model")), ReadFile(dir.File("b.model")));
  const ProsodyPredictor model = ProsodyPredictor::Load(dir.File("a.model"));
  EXPECT_EQ(model.vocab_size(), PhonemeVocab::Load(fixture_->vocab_path()).size());

  Write(dir.File("ref.txt"), "u0.wav\nu1.wav\n");
  const CommandResult stoi = RunCommand(Cli() + " eval --task stoi --ref " + ShellQuote(dir.File("ref.txt")) +
                                        " --hyp " + ShellQuote(dir.File("ref.txt")));
  ASSERT_EQ(stoi.exit_code, 0);
  EXPECT_EQ(stoi.out.rfind("stoi items=2 mean=", 0), 0u) << stoi.out;
}

TEST_F(CliTest, PausesTrainThenPredict) {
  TempDir dir;
  const std::string model = dir.File("pause.model");
  const CommandResult train = RunCommand(Cli() + " pauses train --corpus " +
                                         ShellQuote(DataPath("pause_corpus.txt")) + " --lexicon " +
                                         Lexicon() + " --out " + ShellQuote(model));
  ASSERT_EQ(train.exit_code, 0);
  const CommandResult predict = RunCommand("echo กินข้าวแล้วนอน | " + Cli() + " pauses predict --model " +
                                           ShellQuote(model) + " --lexicon " + Lexicon());
  ASSERT_EQ(predict.exit_code, 0);
  EXPECT_EQ(predict.out, "กินข้าวแล้ว<SPACE>นอน\n");
  const CommandResult never = RunCommand("echo กินข้าวแล้วนอน | " + Cli() + " pauses predict --model " +
                                         ShellQuote(model) + " --lexicon " + Lexicon() +
                                         " --threshold 1.1");
  ASSERT_EQ(never.exit_code, 0);
  EXPECT_EQ(never.out, "กินข้าวแล้วนอน\n");
}

TEST_F(CliTest, EvalWritesReport) {
  TempDir dir;
  Write(dir.File("ref.txt"), "a b c\nx y\n");
  Write(dir.File("hyp.txt"), "a c\nx y\n");
  const std::string report = dir.File("report.json");
  const CommandResult r = RunCommand(Cli() + " eval --task wer --ref " + ShellQuote(dir.File("ref.txt")) +
                                     " --hyp " + ShellQuote(dir.File("hyp.txt")) + " --report " +
                                     ShellQuote(report));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.rfind("wer items=2 ", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("corpus_rate=0.2"), std::string::npos) << r.out;
  std::ifstream in(report);
  std::stringstream json;
  json << in.rdbuf();
  EXPECT_NE(json.str().find("\"aggregate\""), std::string::npos);
  EXPECT_NE(json.str().find("\"items\""), std::string::npos);

  Write(dir.File("short.txt"), "a b c\n");
  EXPECT_EQ(RunCommand(Cli() + " eval --task wer --ref " + ShellQuote(dir.File("ref.txt")) + " --hyp " +
                       ShellQuote(dir.File("short.txt")))
                .exit_code,
            2);
}

}  // namespace
}  // namespace thaifront
