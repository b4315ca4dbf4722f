// SPDX-License-Identifier: Apache-2.0

#include "vlprep/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

#include "vlprep/error.hpp"

namespace vlprep {

namespace {

// Reads the next header token of a PNM file, skipping '#' comments.
std::string_view next_token(std::string_view bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    const unsigned char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(c)) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    ++pos;
  }
  return bytes.substr(start, pos - start);
}

int parse_header_int(std::string_view token, const char* what) {
  if (token.empty() || token.size() > 9) {
    throw InputError(std::string("PPM: bad ") + what);
  }
  int value = 0;
  for (const char c : token) {
    if (c < '0' || c > '9') throw InputError(std::string("PPM: bad ") + what);
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

ImageBuffer decode_ppm(std::string_view bytes) {
  std::size_t pos = 0;
  if (next_token(bytes, pos) != "P6") {
    throw InputError("PPM: expected P6 magic");
  }
  const int width = parse_header_int(next_token(bytes, pos), "width");
  const int height = parse_header_int(next_token(bytes, pos), "height");
  const int maxval = parse_header_int(next_token(bytes, pos), "maxval");
  if (maxval != 255) {
    throw InputError("PPM: only maxval 255 is supported");
  }
  if (width < 1 || height < 1) {
    throw InputError("PPM: empty image");
  }
  // Exactly one whitespace byte separates the header from the raster.
  if (pos >= bytes.size()) {
    throw InputError("PPM: missing raster");
  }
  ++pos;
  const std::size_t need = static_cast<std::size_t>(width) * height * 3;
  if (bytes.size() - pos < need) {
    throw InputError("PPM: truncated raster");
  }
  const auto* first = reinterpret_cast<const std::uint8_t*>(bytes.data() + pos);
  return ImageBuffer(width, height, std::vector<std::uint8_t>(first, first + need));
}

std::string encode_ppm(const ImageBuffer& img) {
  std::string out = "P6\n" + std::to_string(img.width()) + " " +
                    std::to_string(img.height()) + "\n255\n";
  const auto data = img.data();
  out.append(reinterpret_cast<const char*>(data.data()), data.size());
  return out;
}

ImageBuffer decode_png(std::string_view bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()) == 0) {
    throw InputError(std::string("PNG: ") + image.message);
  }
  // RGBA output keeps the stored samples untouched; compositing onto a
  // background would alter colour values, so alpha is stripped by hand.
  image.format = PNG_FORMAT_RGBA;
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  std::vector<std::uint8_t> rgba(PNG_IMAGE_SIZE(image));
  if (png_image_finish_read(&image, nullptr, rgba.data(), 0, nullptr) == 0) {
    const std::string message = image.message;
    png_image_free(&image);
    throw InputError("PNG: " + message);
  }
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t src = 0, dst = 0; dst < rgb.size(); src += 4, dst += 3) {
    rgb[dst] = rgba[src];
    rgb[dst + 1] = rgba[src + 1];
    rgb[dst + 2] = rgba[src + 2];
  }
  return ImageBuffer(width, height, std::move(rgb));
}

ImageBuffer read_image(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() >= 8 &&
      png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) == 0) {
    return decode_png(bytes);
  }
  return decode_ppm(bytes);
}

void write_ppm(const std::filesystem::path& path, const ImageBuffer& img) {
  write_file(path, encode_ppm(img));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("short write to " + path.string());
}

}  // namespace vlprep
