// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lrvis/accel/kdforest.hpp"

namespace lrvis::io {

inline constexpr std::uint32_t kForestFormatVersion = 1;

/// "LRKF", version, I, J, K, node count (u32 each), roots (u32), then nodes
/// as (u32 word_r, f32 split_g); little-endian throughout.
std::vector<std::uint8_t> encode_forest(const accel::KdForest& forest);

/// The format carries no domain, so the partition the forest was built on is
/// supplied; exact split values are recovered from its element boundaries.
accel::KdForest decode_forest(const std::vector<std::uint8_t>& bytes, const accel::Partition& part);

void save_forest(const accel::KdForest& forest, const std::filesystem::path& path);
accel::KdForest load_forest(const std::filesystem::path& path, const accel::Partition& part);

}  // namespace lrvis::io
