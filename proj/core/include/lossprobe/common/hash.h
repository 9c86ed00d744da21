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

#ifndef LOSSPROBE_COMMON_HASH_H_
#define LOSSPROBE_COMMON_HASH_H_

#include <cstdint>
#include <string_view>

namespace lossprobe {

inline constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

constexpr uint64_t Fnv1a64(std::string_view data, uint64_t seed = kFnvOffset) {
  uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace lossprobe

#endif  // LOSSPROBE_COMMON_HASH_H_
