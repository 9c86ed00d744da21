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

#include "lossprobe/common/error.h"

namespace lossprobe {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSpecInvalid: return "SPEC_INVALID";
    case ErrorCode::kStartCrash: return "START_CRASH";
    case ErrorCode::kEventNotEnabled: return "EVENT_NOT_ENABLED";
    case ErrorCode::kCropTooLarge: return "CROP_TOO_LARGE";
    case ErrorCode::kDimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::kSetupFailed: return "SETUP_FAILED";
    case ErrorCode::kBudgetInvalid: return "BUDGET_INVALID";
    case ErrorCode::kInvalidMix: return "INVALID_MIX";
    case ErrorCode::kStateSpaceTooLarge: return "STATE_SPACE_TOO_LARGE";
    case ErrorCode::kManifestMismatch: return "MANIFEST_MISMATCH";
    case ErrorCode::kTraceDiverged: return "TRACE_DIVERGED";
    case ErrorCode::kParse: return "PARSE_ERROR";
    case ErrorCode::kIo: return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace lossprobe
