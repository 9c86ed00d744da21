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

#include "lossprobe/sim/image.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include "lossprobe/common/error.h"

namespace lossprobe::sim {

std::string EncodePgm(const GrayImage& image) {
  std::string out = "P5\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.pixels.data()), image.pixels.size());
  return out;
}

GrayImage DecodePgm(const std::string& bytes) {
  size_t pos = 0;
  auto next_token = [&]() -> std::string {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
    const size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      ++pos;
    }
    return bytes.substr(start, pos - start);
  };
  if (next_token() != "P5") throw Error(ErrorCode::kParse, "not a P5 graymap");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(next_token());
    h = std::stoi(next_token());
    maxval = std::stoi(next_token());
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "malformed PGM header");
  }
  if (w <= 0 || h <= 0 || maxval != 255) {
    throw Error(ErrorCode::kParse, "unsupported PGM geometry or maxval");
  }
  ++pos;  // single whitespace after maxval
  const size_t n = static_cast<size_t>(w) * h;
  if (bytes.size() < pos + n) throw Error(ErrorCode::kParse, "truncated PGM data");
  GrayImage img(w, h);
  std::copy(bytes.begin() + pos, bytes.begin() + pos + n, img.pixels.begin());
  return img;
}

void WritePgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << EncodePgm(image);
}

GrayImage ReadPgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return DecodePgm(ss.str());
}

}  // namespace lossprobe::sim
