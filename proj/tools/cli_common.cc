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

#include "cli_common.h"

#include <cctype>
#include <cstdlib>

#include "thaifront/corpus_io.h"
#include "thaifront/error.h"
#include "thaifront/logging.h"

namespace thaifront {
namespace cli {

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

void CollectNames(const CLI::App& app, std::set<std::string>* names) {
  for (const CLI::Option* opt : app.get_options()) {
    for (const auto& n : opt->get_lnames()) names->insert(n);
  }
  for (const CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) CollectNames(*sub, names);
}

}  // namespace

std::string EnvName(std::string_view option) {
  std::string env = "THAIFRONT_";
  for (char c : option) {
    env += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return env;
}

CLI::Option* AddFlag(CLI::App* app, const std::string& name, bool& target,
                     const std::string& help) {
  return app->add_flag("--" + name, target, help)->envname(EnvName(name));
}

std::set<std::string> OptionNames(const CLI::App& app) {
  std::set<std::string> names;
  CollectNames(app, &names);
  return names;
}

void ApplyConfigFile(int argc, const char* const* argv, const std::set<std::string>& known) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      path = std::string(arg.substr(9));
    }
  }
  if (path.empty()) return;
  const std::string content = ReadFile(path);
  std::size_t line_number = 0;
  for (std::string_view raw : SplitLines(content)) {
    ++line_number;
    const std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("config", path + ":" + std::to_string(line_number) +
                                               ": expected key = value");
    }
    std::string key = Trim(std::string_view(line).substr(0, eq));
    std::string value = Trim(std::string_view(line).substr(eq + 1));
    for (char& c : key) {
      if (c == '_') c = '-';
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (!known.count(key) || key == "config") {
      throw CLI::ValidationError("config", path + ":" + std::to_string(line_number) +
                                               ": unknown key '" + key + "'");
    }
    ::setenv(EnvName(key).c_str(), value.c_str(), /*overwrite=*/0);
  }
}

std::vector<std::string> ReadLines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

int MapLines(std::istream& in, std::ostream& out, std::string_view stage, bool strict,
             const std::function<std::string(const std::string&)>& fn) {
  std::string line;
  std::size_t line_number = 0;
  std::size_t failed = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      out << '\n';
      continue;
    }
    try {
      out << fn(line) << '\n';
    } catch (const Error& e) {
      ++failed;
      Logger()->error(LogLine("line_failed")
                          .Kv("line", line_number)
                          .Kv("stage", stage)
                          .Kv("error", e.what())
                          .str());
      if (strict) return kExitData;
      out << '\n';
    }
  }
  if (failed > 0) {
    Logger()->warn(LogLine("lines_failed").Kv("stage", stage).Kv("count", failed).str());
  }
  return kExitOk;
}

}  // namespace cli
}  // namespace thaifront
