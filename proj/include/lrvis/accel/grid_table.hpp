// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lrvis/accel/partition.hpp"

namespace lrvis::accel {

/// Dense cell -> element table: the CPU analog of a look-up texture.
/// Valid only when every element boundary lies on a grid plane.
struct GridTable {
    Box3 domain;
    std::array<AxisBins, 3> bins;
    std::vector<ElementId> cells;  // x fastest

    std::array<int, 3> resolution() const { return {bins[0].count(), bins[1].count(), bins[2].count()}; }

    ElementId lookup(const Vec3& p) const {
        if (!in_domain(domain, p)) return kNoElement;
        const std::size_t i = static_cast<std::size_t>(bins[0].bin(p[0]));
        const std::size_t j = static_cast<std::size_t>(bins[1].bin(p[1]));
        const std::size_t k = static_cast<std::size_t>(bins[2].bin(p[2]));
        return cells[i + static_cast<std::size_t>(bins[0].count()) * (j + static_cast<std::size_t>(bins[1].count()) * k)];
    }
};

inline constexpr double kLatticeTolerance = 1e-12;
inline constexpr std::size_t kMaxGridCells = std::size_t{1} << 27;

BuildResult<GridTable> build_grid_table(const Partition& part, std::array<int, 3> resolution);

/// Smallest power-of-two resolution per axis on which every boundary falls on a
/// grid plane, or nullopt if some boundary is not dyadic.
std::optional<std::array<int, 3>> finest_dyadic_resolution(const Partition& part);

}  // namespace lrvis::accel
