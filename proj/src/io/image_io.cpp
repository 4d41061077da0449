// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/io/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstring>
#include <string>

#include "lrvis/core/error.hpp"
#include "lrvis/io/files.hpp"

namespace lrvis::io {
namespace {

void check_nonempty(const Image& img) {
    if (img.width <= 0 || img.height <= 0) throw Error("cannot encode an empty image");
    if (img.rgba.size() != static_cast<std::size_t>(img.width) * img.height * 4)
        throw Error("image buffer size does not match its dimensions");
}

struct PngReadCursor {
    const std::vector<std::uint8_t>* bytes;
    std::size_t pos;
};

[[noreturn]] void png_fail(png_structp, png_const_charp msg) { throw FormatError(std::string("PNG: ") + msg); }
void png_warn(png_structp, png_const_charp) {}

}  // namespace

ImageFormat format_for_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext == ".png" ? ImageFormat::Png : ImageFormat::Ppm;
}

std::vector<std::uint8_t> encode_ppm(const Image& img) {
    check_nonempty(img);
    const std::string header = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + static_cast<std::size_t>(img.width) * img.height * 3);
    for (std::size_t i = 0; i < img.rgba.size(); i += 4) out.insert(out.end(), img.rgba.begin() + i, img.rgba.begin() + i + 3);
    return out;
}

Image decode_ppm(const std::vector<std::uint8_t>& bytes) {
    std::size_t pos = 0;
    auto token = [&]() {
        while (pos < bytes.size()) {
            if (std::isspace(bytes[pos])) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
        std::string t;
        while (pos < bytes.size() && !std::isspace(bytes[pos])) t.push_back(static_cast<char>(bytes[pos++]));
        return t;
    };
    if (token() != "P6") throw FormatError("not a binary PPM");
    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(token());
        h = std::stoi(token());
        maxval = std::stoi(token());
    } catch (const std::exception&) {
        throw FormatError("malformed PPM header");
    }
    if (w <= 0 || h <= 0 || maxval != 255) throw FormatError("unsupported PPM dimensions or maxval");
    ++pos;  // single whitespace before the raster
    const std::size_t n = static_cast<std::size_t>(w) * h * 3;
    if (bytes.size() < pos + n) throw FormatError("PPM raster truncated");
    Image img(w, h);
    for (std::size_t i = 0; i < static_cast<std::size_t>(w) * h; ++i) {
        std::memcpy(&img.rgba[4 * i], &bytes[pos + 3 * i], 3);
        img.rgba[4 * i + 3] = 255;
    }
    return img;
}

std::vector<std::uint8_t> encode_png(const Image& img) {
    check_nonempty(img);
    std::vector<std::uint8_t> out;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
    if (!png) throw Error("PNG: cannot create writer");
    png_infop info = png_create_info_struct(png);
    try {
        png_set_write_fn(
            png, &out,
            [](png_structp p, png_bytep data, png_size_t len) {
                auto* v = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(p));
                v->insert(v->end(), data, data + len);
            },
            nullptr);
        png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
                     PNG_COLOR_TYPE_RGBA, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        for (int y = 0; y < img.height; ++y) png_write_row(png, const_cast<png_bytep>(img.pixel(0, y)));
        png_write_end(png, nullptr);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw;
    }
    png_destroy_write_struct(&png, &info);
    return out;
}

Image decode_png(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) throw FormatError("not a PNG stream");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
    if (!png) throw Error("PNG: cannot create reader");
    png_infop info = png_create_info_struct(png);
    PngReadCursor cur{&bytes, 0};
    Image img;
    try {
        png_set_read_fn(png, &cur, [](png_structp p, png_bytep data, png_size_t len) {
            auto* c = static_cast<PngReadCursor*>(png_get_io_ptr(p));
            if (c->pos + len > c->bytes->size()) png_error(p, "stream truncated");
            std::memcpy(data, c->bytes->data() + c->pos, len);
            c->pos += len;
        });
        png_read_info(png, info);
        png_set_expand(png);
        png_set_strip_16(png);
        png_set_gray_to_rgb(png);
        png_set_add_alpha(png, 0xFF, PNG_FILLER_AFTER);
        png_read_update_info(png, info);
        img = Image(static_cast<int>(png_get_image_width(png, info)), static_cast<int>(png_get_image_height(png, info)));
        for (int y = 0; y < img.height; ++y) png_read_row(png, img.pixel(0, y), nullptr);
        png_read_end(png, nullptr);
    } catch (...) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw;
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void write_image(const Image& img, const std::filesystem::path& path, ImageFormat format) {
    write_atomic(path, format == ImageFormat::Png ? encode_png(img) : encode_ppm(img));
}

Image read_image(const std::filesystem::path& path) {
    const auto bytes = read_bytes(path);
    return format_for_path(path) == ImageFormat::Png ? decode_png(bytes) : decode_ppm(bytes);
}

}  // namespace lrvis::io
