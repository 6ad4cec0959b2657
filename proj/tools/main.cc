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

#include <exception>
#include <iostream>

#include "cli_common.h"
#include "thaifront/error.h"
#include "thaifront/logging.h"

int main(int argc, char** argv) {
  using namespace thaifront;
  CLI::App app{"thaifront: Thai text front end for speech synthesis"};
  app.require_subcommand(1);
  std::string config_path;
  std::string log_level = "info";
  app.add_option("--config", config_path, "Flat key = value file of option defaults");
  cli::AddOption(&app, "log-level", log_level, "debug, info, warn, error or off");

  cli::Action action;
  cli::RegisterTextCommands(&app, &action);
  cli::RegisterAudioCommands(&app, &action);
  cli::RegisterEvalCommand(&app, &action);

  try {
    cli::ApplyConfigFile(argc, argv, cli::OptionNames(app));
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::kExitOk : cli::kExitUsage;
  } catch (const Error& e) {
    Logger()->error(LogLine("config_failed").Kv("error", e.what()).str());
    return cli::kExitData;
  }

  try {
    SetLogLevel(log_level);
    return action ? action() : cli::kExitUsage;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? cli::kExitOk : cli::kExitUsage;
  } catch (const Error& e) {
    Logger()->error(LogLine("failed").Kv("error", e.what()).str());
    return cli::kExitData;
  } catch (const std::exception& e) {
    Logger()->critical(LogLine("internal_error").Kv("error", e.what()).str());
    return cli::kExitInternal;
  }
}
