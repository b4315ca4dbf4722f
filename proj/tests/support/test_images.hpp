// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>

#include "vlprep/raster.hpp"

namespace vlprep::testing {

inline ImageBuffer random_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(w) * h * 3);
  for (auto& b : data) b = static_cast<std::uint8_t>(rng() & 0xFF);
  return ImageBuffer(w, h, std::move(data));
}

// Smooth content so resampled images compress and compare sensibly.
inline ImageBuffer gradient_image(int w, int h) {
  ImageBuffer img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.set(x, y, {static_cast<std::uint8_t>(x * 255 / std::max(1, w - 1)),
                     static_cast<std::uint8_t>(y * 255 / std::max(1, h - 1)),
                     static_cast<std::uint8_t>((x + y) & 0xFF)});
    }
  }
  return img;
}

}  // namespace vlprep::testing
