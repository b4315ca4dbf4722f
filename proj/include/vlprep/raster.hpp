// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vlprep/partition.hpp"

namespace vlprep {

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb8&) const = default;
};

// 8-bit RGB raster, row-major, three bytes per pixel.
class ImageBuffer {
 public:
  ImageBuffer() = default;
  ImageBuffer(int width, int height, Rgb8 fill = {});
  ImageBuffer(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }

  std::span<const std::uint8_t> data() const { return data_; }
  std::span<std::uint8_t> mutable_data() { return data_; }

  std::span<const std::uint8_t> row(int y) const {
    return std::span<const std::uint8_t>(data_).subspan(
        static_cast<std::size_t>(y) * width_ * 3,
        static_cast<std::size_t>(width_) * 3);
  }
  std::span<std::uint8_t> mutable_row(int y) {
    return std::span<std::uint8_t>(data_).subspan(
        static_cast<std::size_t>(y) * width_ * 3,
        static_cast<std::size_t>(width_) * 3);
  }

  Rgb8 at(int x, int y) const {
    const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
    return {data_[i], data_[i + 1], data_[i + 2]};
  }
  void set(int x, int y, Rgb8 c) {
    const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
    data_[i] = c.r;
    data_[i + 1] = c.g;
    data_[i + 2] = c.b;
  }

  // Copies the w x h region at (x, y) into a new buffer.
  ImageBuffer crop(int x, int y, int w, int h) const;
  // Copies `src` onto this buffer with its top-left corner at (x, y).
  void blit(const ImageBuffer& src, int x, int y);

  bool operator==(const ImageBuffer&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Tiles of a canvas in row-major grid order.
struct TileSet {
  std::vector<ImageBuffer> tiles;
  int p_w = 0;
  int p_h = 0;
  int tile_size = 0;
};

// Bilinear resampling with half-pixel centers and edge clamping.
ImageBuffer resize_bilinear(const ImageBuffer& img, int out_w, int out_h);

ImageBuffer pad_to_canvas(const ImageBuffer& img, int canvas_w, int canvas_h,
                          Rgb8 fill = {});

TileSet tile(const ImageBuffer& img, int tile_size);

ImageBuffer reassemble(const TileSet& tiles);

// Aspect-preserving fit into tile_size x tile_size, anchored top-left.
ImageBuffer global_view(const ImageBuffer& img, int tile_size,
                        Rgb8 fill = {});

// Resizes and pads `img` onto the plan's canvas.
ImageBuffer render_canvas(const ImageBuffer& img, const PartitionPlan& plan,
                          Rgb8 fill = {});

// FNV-1a over dimensions and pixel bytes.
std::uint64_t checksum(const ImageBuffer& img);

std::vector<std::uint64_t> tile_checksums(const TileSet& tiles);

}  // namespace vlprep
