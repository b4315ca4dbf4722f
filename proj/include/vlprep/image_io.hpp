// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vlprep/raster.hpp"

namespace vlprep {

// Binary PPM (P6, maxval 255).
ImageBuffer decode_ppm(std::string_view bytes);
std::string encode_ppm(const ImageBuffer& img);

// 8-bit RGB or RGBA PNG; alpha is dropped. Palette and gray images are
// expanded to RGB.
ImageBuffer decode_png(std::string_view bytes);

// Dispatches on the file signature.
ImageBuffer read_image(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const ImageBuffer& img);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace vlprep
