// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/accel/grid_table.hpp"

#include <cmath>
#include <string>

#include "lrvis/accel/dyadic.hpp"

namespace lrvis::accel {

BuildResult<GridTable> build_grid_table(const Partition& part, std::array<int, 3> resolution) {
    std::size_t total = 1;
    for (int r : resolution) {
        if (r < 1) return BuildResult<GridTable>::inapplicable("resolution must be positive");
        total *= static_cast<std::size_t>(r);
    }
    if (total > kMaxGridCells) return BuildResult<GridTable>::inapplicable("grid table exceeds the cell budget");

    GridTable table;
    table.domain = part.domain;
    for (int a = 0; a < 3; ++a) table.bins[a] = AxisBins(part.domain.lo[a], part.domain.hi[a], resolution[a]);
    table.cells.assign(total, kNoElement);

    const Vec3 ext = part.domain.extent();
    for (std::size_t e = 0; e < part.boxes.size(); ++e) {
        const Box3& box = part.boxes[e];
        std::array<int, 3> lo{}, hi{};
        for (int a = 0; a < 3; ++a) {
            const double ulo = (box.lo[a] - part.domain.lo[a]) / ext[a] * resolution[a];
            const double uhi = (box.hi[a] - part.domain.lo[a]) / ext[a] * resolution[a];
            lo[a] = static_cast<int>(std::lround(ulo));
            hi[a] = static_cast<int>(std::lround(uhi));
            if (std::abs(ulo - lo[a]) > kLatticeTolerance * resolution[a] ||
                std::abs(uhi - hi[a]) > kLatticeTolerance * resolution[a])
                return BuildResult<GridTable>::inapplicable("element " + std::to_string(e) +
                                                            " has a boundary between grid planes on axis " +
                                                            std::to_string(a));
            // Element boundaries are the authoritative edge values.
            auto& edges = table.bins[a].edges();
            if (lo[a] > 0 && lo[a] < resolution[a]) edges[lo[a]] = box.lo[a];
            if (hi[a] > 0 && hi[a] < resolution[a]) edges[hi[a]] = box.hi[a];
        }
        for (int k = lo[2]; k < hi[2]; ++k)
            for (int j = lo[1]; j < hi[1]; ++j)
                for (int i = lo[0]; i < hi[0]; ++i) {
                    auto& cell = table.cells[static_cast<std::size_t>(i) +
                                             static_cast<std::size_t>(resolution[0]) *
                                                 (j + static_cast<std::size_t>(resolution[1]) * k)];
                    if (cell != kNoElement)
                        return BuildResult<GridTable>::inapplicable("cell claimed by two elements");
                    cell = static_cast<ElementId>(e);
                }
    }
    for (ElementId c : table.cells)
        if (c == kNoElement) return BuildResult<GridTable>::inapplicable("cell not covered by any element");
    return BuildResult<GridTable>::ok(std::move(table));
}

std::optional<std::array<int, 3>> finest_dyadic_resolution(const Partition& part) {
    std::array<int, 3> levels{0, 0, 0};
    const Vec3 ext = part.domain.extent();
    for (const Box3& box : part.boxes) {
        for (int a = 0; a < 3; ++a) {
            for (double x : {box.lo[a], box.hi[a]}) {
                const auto level = dyadic_level((x - part.domain.lo[a]) / ext[a]);
                if (!level) return std::nullopt;
                levels[a] = std::max(levels[a], *level);
            }
        }
    }
    return std::array<int, 3>{1 << levels[0], 1 << levels[1], 1 << levels[2]};
}

}  // namespace lrvis::accel
