// SPDX-License-Identifier: Apache-2.0

#include "vlprep/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "vlprep/error.hpp"

namespace vlprep {

namespace {

void check_positive(int w, int h, const char* what) {
  if (w < 1 || h < 1) {
    throw GeometryError(std::string(what) + " dimensions must be positive, got " +
                        std::to_string(w) + "x" + std::to_string(h));
  }
}

struct AxisSample {
  int lo = 0;
  int hi = 0;
  double frac = 0.0;
};

std::vector<AxisSample> axis_samples(int in_len, int out_len) {
  std::vector<AxisSample> out(out_len);
  const double scale = static_cast<double>(in_len) / out_len;
  for (int i = 0; i < out_len; ++i) {
    double src = (i + 0.5) * scale - 0.5;
    src = std::clamp(src, 0.0, static_cast<double>(in_len - 1));
    const int lo = static_cast<int>(std::floor(src));
    out[i].lo = lo;
    out[i].hi = std::min(lo + 1, in_len - 1);
    out[i].frac = src - lo;
  }
  return out;
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, Rgb8 fill)
    : width_(width), height_(height) {
  check_positive(width, height, "image");
  data_.resize(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = fill.r;
    data_[i + 1] = fill.g;
    data_[i + 2] = fill.b;
  }
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_positive(width, height, "image");
  if (data_.size() != static_cast<std::size_t>(width) * height * 3) {
    throw GeometryError("pixel data holds " + std::to_string(data_.size()) +
                        " bytes, expected " +
                        std::to_string(static_cast<std::size_t>(width) *
                                       height * 3));
  }
}

ImageBuffer ImageBuffer::crop(int x, int y, int w, int h) const {
  check_positive(w, h, "crop");
  if (x < 0 || y < 0 || x + w > width_ || y + h > height_) {
    throw GeometryError("crop rectangle leaves the image");
  }
  ImageBuffer out(w, h);
  for (int row = 0; row < h; ++row) {
    const auto src = this->row(y + row).subspan(static_cast<std::size_t>(x) * 3,
                                                static_cast<std::size_t>(w) * 3);
    std::memcpy(out.mutable_row(row).data(), src.data(), src.size());
  }
  return out;
}

void ImageBuffer::blit(const ImageBuffer& src, int x, int y) {
  if (x < 0 || y < 0 || x + src.width() > width_ ||
      y + src.height() > height_) {
    throw GeometryError("blit target rectangle leaves the image");
  }
  for (int row = 0; row < src.height(); ++row) {
    auto dst = mutable_row(y + row).subspan(static_cast<std::size_t>(x) * 3,
                                            static_cast<std::size_t>(src.width()) * 3);
    std::memcpy(dst.data(), src.row(row).data(), dst.size());
  }
}

ImageBuffer resize_bilinear(const ImageBuffer& img, int out_w, int out_h) {
  check_positive(out_w, out_h, "resize target");
  if (img.empty()) {
    throw GeometryError("cannot resize an empty image");
  }
  if (out_w == img.width() && out_h == img.height()) {
    return img;
  }
  const auto xs = axis_samples(img.width(), out_w);
  const auto ys = axis_samples(img.height(), out_h);
  ImageBuffer out(out_w, out_h);
  for (int y = 0; y < out_h; ++y) {
    const auto top = img.row(ys[y].lo);
    const auto bottom = img.row(ys[y].hi);
    const double fy = ys[y].frac;
    auto dst = out.mutable_row(y);
    for (int x = 0; x < out_w; ++x) {
      const std::size_t l = static_cast<std::size_t>(xs[x].lo) * 3;
      const std::size_t r = static_cast<std::size_t>(xs[x].hi) * 3;
      const double fx = xs[x].frac;
      for (int c = 0; c < 3; ++c) {
        const double upper = top[l + c] + (top[r + c] - top[l + c]) * fx;
        const double lower =
            bottom[l + c] + (bottom[r + c] - bottom[l + c]) * fx;
        const double v = upper + (lower - upper) * fy;
        dst[static_cast<std::size_t>(x) * 3 + c] =
            static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return out;
}

ImageBuffer pad_to_canvas(const ImageBuffer& img, int canvas_w, int canvas_h,
                          Rgb8 fill) {
  check_positive(canvas_w, canvas_h, "canvas");
  if (canvas_w < img.width() || canvas_h < img.height()) {
    throw GeometryError("canvas " + std::to_string(canvas_w) + "x" +
                        std::to_string(canvas_h) + " is smaller than image " +
                        std::to_string(img.width()) + "x" +
                        std::to_string(img.height()));
  }
  if (canvas_w == img.width() && canvas_h == img.height()) {
    return img;
  }
  ImageBuffer out(canvas_w, canvas_h, fill);
  out.blit(img, 0, 0);
  return out;
}

TileSet tile(const ImageBuffer& img, int tile_size) {
  if (tile_size < 1) {
    throw GeometryError("tile_size must be positive");
  }
  if (img.empty() || img.width() % tile_size != 0 ||
      img.height() % tile_size != 0) {
    throw AlignmentError("image " + std::to_string(img.width()) + "x" +
                         std::to_string(img.height()) +
                         " is not a multiple of tile size " +
                         std::to_string(tile_size));
  }
  TileSet set;
  set.tile_size = tile_size;
  set.p_w = img.width() / tile_size;
  set.p_h = img.height() / tile_size;
  set.tiles.reserve(static_cast<std::size_t>(set.p_w) * set.p_h);
  for (int r = 0; r < set.p_h; ++r) {
    for (int c = 0; c < set.p_w; ++c) {
      set.tiles.push_back(
          img.crop(c * tile_size, r * tile_size, tile_size, tile_size));
    }
  }
  return set;
}

ImageBuffer reassemble(const TileSet& tiles) {
  if (tiles.p_w < 1 || tiles.p_h < 1 || tiles.tile_size < 1) {
    throw AlignmentError("tile set has an empty grid");
  }
  if (tiles.tiles.size() != static_cast<std::size_t>(tiles.p_w) * tiles.p_h) {
    throw AlignmentError("tile set holds " + std::to_string(tiles.tiles.size()) +
                         " tiles for a " + std::to_string(tiles.p_w) + "x" +
                         std::to_string(tiles.p_h) + " grid");
  }
  for (const auto& t : tiles.tiles) {
    if (t.width() != tiles.tile_size || t.height() != tiles.tile_size) {
      throw AlignmentError("tile of size " + std::to_string(t.width()) + "x" +
                           std::to_string(t.height()) + " in a set of " +
                           std::to_string(tiles.tile_size) + "px tiles");
    }
  }
  ImageBuffer out(tiles.p_w * tiles.tile_size, tiles.p_h * tiles.tile_size);
  for (int r = 0; r < tiles.p_h; ++r) {
    for (int c = 0; c < tiles.p_w; ++c) {
      out.blit(tiles.tiles[static_cast<std::size_t>(r) * tiles.p_w + c],
               c * tiles.tile_size, r * tiles.tile_size);
    }
  }
  return out;
}

ImageBuffer global_view(const ImageBuffer& img, int tile_size, Rgb8 fill) {
  if (img.empty()) {
    throw GeometryError("cannot build a global view of an empty image");
  }
  check_positive(tile_size, tile_size, "tile");
  const std::int64_t w = img.width();
  const std::int64_t h = img.height();
  int out_w = tile_size;
  int out_h = tile_size;
  if (w >= h) {
    out_h = static_cast<int>(std::clamp<std::int64_t>(
        (2 * h * tile_size + w) / (2 * w), 1, tile_size));
  } else {
    out_w = static_cast<int>(std::clamp<std::int64_t>(
        (2 * w * tile_size + h) / (2 * h), 1, tile_size));
  }
  return pad_to_canvas(resize_bilinear(img, out_w, out_h), tile_size,
                       tile_size, fill);
}

ImageBuffer render_canvas(const ImageBuffer& img, const PartitionPlan& plan,
                          Rgb8 fill) {
  const PlacementRect placement =
      resize_pad_geometry(img.height(), img.width(), plan);
  return pad_to_canvas(
      resize_bilinear(img, placement.scaled_w, placement.scaled_h),
      plan.canvas_w, plan.canvas_h, fill);
}

std::uint64_t checksum(const ImageBuffer& img) {
  std::uint64_t hash = 1469598103934665603ULL;
  auto mix = [&hash](std::uint8_t byte) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  };
  for (int shift = 0; shift < 32; shift += 8) {
    mix(static_cast<std::uint8_t>(img.width() >> shift));
    mix(static_cast<std::uint8_t>(img.height() >> shift));
  }
  for (const std::uint8_t byte : img.data()) {
    mix(byte);
  }
  return hash;
}

std::vector<std::uint64_t> tile_checksums(const TileSet& tiles) {
  std::vector<std::uint64_t> sums;
  sums.reserve(tiles.tiles.size());
  for (const auto& t : tiles.tiles) {
    sums.push_back(checksum(t));
  }
  return sums;
}

}  // namespace vlprep
