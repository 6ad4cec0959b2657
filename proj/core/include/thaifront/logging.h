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

// Structured key=value logging to stderr.

#ifndef THAIFRONT_LOGGING_H_
#define THAIFRONT_LOGGING_H_

#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include <spdlog/spdlog.h>

namespace thaifront {

// Shared stderr logger named "thaifront". Safe to call from any thread.
std::shared_ptr<spdlog::logger> Logger();

// "info", "warn", "error", "debug", "off". Throws ValidationError otherwise.
void SetLogLevel(std::string_view level);

// Builds "event k1=v1 k2=v2"; values with spaces are quoted.
class LogLine {
 public:
  explicit LogLine(std::string_view event) : text_(event) {}

  template <typename T>
  LogLine& Kv(std::string_view key, const T& value) {
    return Add(key, fmt::format("{}", value));
  }

  const std::string& str() const { return text_; }

 private:
  LogLine& Add(std::string_view key, const std::string& value);

  std::string text_;
};

}  // namespace thaifront

#endif  // THAIFRONT_LOGGING_H_
