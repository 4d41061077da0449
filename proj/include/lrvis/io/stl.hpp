// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lrvis/core/mesh.hpp"

namespace lrvis::io {

/// Binary (80-byte header, u32 count, 50-byte records) or ASCII STL.
/// Zero-area triangles are dropped and counted.
TriangleMesh parse_stl(const std::vector<std::uint8_t>& bytes);
TriangleMesh load_stl(const std::filesystem::path& path);

std::vector<std::uint8_t> stl_binary(const std::vector<Triangle>& tris);
std::string stl_ascii(const std::vector<Triangle>& tris, const std::string& name = "mesh");

/// 12 outward-facing triangles of an axis-aligned box.
std::vector<Triangle> box_triangles(const Box3& box);

}  // namespace lrvis::io
