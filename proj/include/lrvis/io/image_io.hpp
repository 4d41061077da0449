// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lrvis/core/image.hpp"

namespace lrvis::io {

enum class ImageFormat { Ppm, Png };

/// From the file extension (.png selects PNG, anything else PPM).
ImageFormat format_for_path(const std::filesystem::path& path);

/// Binary P6, maxval 255, RGB only (alpha dropped).
std::vector<std::uint8_t> encode_ppm(const Image& img);
Image decode_ppm(const std::vector<std::uint8_t>& bytes);

/// RGBA8 PNG.
std::vector<std::uint8_t> encode_png(const Image& img);
Image decode_png(const std::vector<std::uint8_t>& bytes);

/// Throws on an empty image or I/O failure; never leaves a partial file.
void write_image(const Image& img, const std::filesystem::path& path, ImageFormat format);
inline void write_image(const Image& img, const std::filesystem::path& path) {
    write_image(img, path, format_for_path(path));
}
Image read_image(const std::filesystem::path& path);

}  // namespace lrvis::io
