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

#include "thaifront/logging.h"

#include <mutex>

#include <spdlog/sinks/stdout_sinks.h>

#include "thaifront/error.h"

namespace thaifront {

std::shared_ptr<spdlog::logger> Logger() {
  static std::once_flag once;
  static std::shared_ptr<spdlog::logger> logger;
  std::call_once(once, [] {
    logger = spdlog::get("thaifront");
    if (!logger) {
      logger = std::make_shared<spdlog::logger>(
          "thaifront", std::make_shared<spdlog::sinks::stderr_sink_mt>());
      logger->set_pattern("level=%l %v");
      logger->set_level(spdlog::level::info);
    }
  });
  return logger;
}

void SetLogLevel(std::string_view level) {
  auto parsed = spdlog::level::from_str(std::string(level));
  if (parsed == spdlog::level::off && level != "off") {
    throw ValidationError("unknown log level '" + std::string(level) + "'");
  }
  Logger()->set_level(parsed);
}

LogLine& LogLine::Add(std::string_view key, const std::string& value) {
  text_ += ' ';
  text_ += key;
  text_ += '=';
  if (value.empty() || value.find_first_of(" \t\"") != std::string::npos) {
    text_ += '"';
    for (char c : value) {
      if (c == '"' || c == '\\') text_ += '\\';
      text_ += c;
    }
    text_ += '"';
  } else {
    text_ += value;
  }
  return *this;
}

}  // namespace thaifront
