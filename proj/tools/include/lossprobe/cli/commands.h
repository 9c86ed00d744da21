// Copyright 2026 The LossProbe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOSSPROBE_CLI_COMMANDS_H_
#define LOSSPROBE_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace lossprobe::cli {

// Process exit codes. These are part of the tool's interface.
enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,  // replay reproduced a different verdict
  kExitUsage = 2,
  kExitSetupFailed = 3,
  kExitManifestMismatch = 4,
  kExitTraceDiverged = 5,
  kExitFailure = 6,  // unreadable input, invalid app, I/O errors
  kExitFindings = 10,
};

// Entry point of the `lossprobe` tool. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lossprobe::cli

#endif  // LOSSPROBE_CLI_COMMANDS_H_
