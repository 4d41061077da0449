// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace lrvis {

/// 8-bit RGBA raster, row-major from the top row.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgba;

    Image() = default;
    Image(int w, int h) : width(w), height(h), rgba(static_cast<std::size_t>(w) * h * 4, 0) {}

    std::uint8_t* pixel(int x, int y) { return &rgba[(static_cast<std::size_t>(y) * width + x) * 4]; }
    const std::uint8_t* pixel(int x, int y) const { return &rgba[(static_cast<std::size_t>(y) * width + x) * 4]; }

    std::array<std::uint8_t, 4> at(int x, int y) const {
        const std::uint8_t* p = pixel(x, y);
        return {p[0], p[1], p[2], p[3]};
    }

    friend bool operator==(const Image&, const Image&) = default;
};

/// Maps [0, 1] to 0..255 with rounding; out-of-range values are clamped.
inline std::uint8_t to_byte(double v) {
    if (!(v > 0.0)) return 0;
    if (v >= 1.0) return 255;
    return static_cast<std::uint8_t>(v * 255.0 + 0.5);
}

}  // namespace lrvis
