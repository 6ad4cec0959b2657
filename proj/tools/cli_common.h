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

#ifndef THAIFRONT_TOOLS_CLI_COMMON_H_
#define THAIFRONT_TOOLS_CLI_COMMON_H_

#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"

namespace thaifront {
namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

// The command chosen on the command line, run after parsing succeeds.
using Action = std::function<int()>;

// "pause-model" -> "THAIFRONT_PAUSE_MODEL".
std::string EnvName(std::string_view option);

// "--name" bound to `target`, falling back to $THAIFRONT_NAME.
template <typename T>
CLI::Option* AddOption(CLI::App* app, const std::string& name, T& target,
                       const std::string& help) {
  return app->add_option("--" + name, target, help)->envname(EnvName(name));
}

CLI::Option* AddFlag(CLI::App* app, const std::string& name, bool& target,
                     const std::string& help);

// Long option names of `app` and all of its subcommands.
std::set<std::string> OptionNames(const CLI::App& app);

// Finds "--config FILE" or "--config=FILE" in argv and exports every
// "key = value" line of that file as a THAIFRONT_* environment default. Set
// environment variables and flags still take precedence. Throws
// CLI::ValidationError for a key that names no option.
void ApplyConfigFile(int argc, const char* const* argv, const std::set<std::string>& known);

// Lines of a stream without their trailing '\r'.
std::vector<std::string> ReadLines(std::istream& in);

// Maps each input line through `fn` and writes one output line per input
// line. Blank input gives a blank output. A thaifront::Error on a line is
// logged with the line number and stage and gives a blank output line, or
// with `strict` stops and returns kExitData.
int MapLines(std::istream& in, std::ostream& out, std::string_view stage, bool strict,
             const std::function<std::string(const std::string&)>& fn);

// Registers the subcommands and stores the selected one in `action`.
void RegisterTextCommands(CLI::App* app, Action* action);
void RegisterAudioCommands(CLI::App* app, Action* action);
void RegisterEvalCommand(CLI::App* app, Action* action);

}  // namespace cli
}  // namespace thaifront

#endif  // THAIFRONT_TOOLS_CLI_COMMON_H_
