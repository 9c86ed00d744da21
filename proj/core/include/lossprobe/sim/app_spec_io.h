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

#ifndef LOSSPROBE_SIM_APP_SPEC_IO_H_
#define LOSSPROBE_SIM_APP_SPEC_IO_H_

#include <filesystem>
#include <string>

#include "lossprobe/sim/app_spec.h"

namespace lossprobe::sim {

// Parses the JSON app-spec format (docs/app-spec-format.md) and finalizes
// the result. Unknown keys are rejected. Throws Error(kSpecInvalid).
AppSpec ParseAppSpec(const std::string& text);

// Reads and parses a file. Throws Error(kIo) or Error(kSpecInvalid).
AppSpec LoadAppSpecFile(const std::filesystem::path& path);

// Inverse of ParseAppSpec. Every field is written explicitly.
std::string SerializeAppSpec(const AppSpec& spec);

}  // namespace lossprobe::sim

#endif  // LOSSPROBE_SIM_APP_SPEC_IO_H_
