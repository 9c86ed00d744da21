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

#ifndef LOSSPROBE_SIM_IMAGE_H_
#define LOSSPROBE_SIM_IMAGE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lossprobe::sim {

// Row-major 8-bit grayscale raster.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int w, int h, uint8_t fill = 0)
      : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

  uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
  uint8_t& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }

  bool operator==(const GrayImage&) const = default;
};

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  RgbImage() = default;
  RgbImage(int w, int h, Rgb fill = {})
      : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

  bool operator==(const RgbImage&) const = default;
};

// Binary portable graymap, "P5", maxval 255.
std::string EncodePgm(const GrayImage& image);
GrayImage DecodePgm(const std::string& bytes);
void WritePgm(const std::filesystem::path& path, const GrayImage& image);
GrayImage ReadPgm(const std::filesystem::path& path);

}  // namespace lossprobe::sim

#endif  // LOSSPROBE_SIM_IMAGE_H_
