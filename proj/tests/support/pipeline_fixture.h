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

#ifndef THAIFRONT_TESTS_PIPELINE_FIXTURE_H_
#define THAIFRONT_TESTS_PIPELINE_FIXTURE_H_

#include <string>

#include "test_util.h"
#include "thaifront/pipeline.h"

namespace thaifront::testing {

// Test data plus artifacts derived from it: a vocab built from the fixture
// and exception annotations and a pause model trained on the pause corpus.
class PipelineFixture {
 public:
  PipelineFixture();

  // Every path set, pause model included.
  PipelineConfig Config() const;

  const std::string& vocab_path() const { return vocab_path_; }
  const std::string& pause_model_path() const { return pause_model_path_; }
  const TempDir& dir() const { return dir_; }

 private:
  TempDir dir_;
  std::string vocab_path_;
  std::string pause_model_path_;
};

}  // namespace thaifront::testing

#endif  // THAIFRONT_TESTS_PIPELINE_FIXTURE_H_
