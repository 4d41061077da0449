// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "lrvis/accel/packed.hpp"
#include "lrvis/accel/partition.hpp"

namespace lrvis::accel {

/// Pointer octree over a dyadic partition. Words use the k-d forest
/// convention: leaf bit + element index, or index of an internal node whose
/// eight children occupy children[8*i .. 8*i+7] (child = x | y<<1 | z<<2).
struct Octree {
    Box3 domain;
    std::uint32_t root = 0;
    std::vector<std::uint32_t> children;
    std::vector<Vec3> centers;  // split point of each internal node
    int depth = 0;

    std::size_t node_count() const { return centers.size(); }

    ElementId lookup(const Vec3& p) const {
        if (!in_domain(domain, p)) return kNoElement;
        std::uint32_t word = root;
        while (!(word & kLeafBit)) {
            const Vec3& c = centers[word];
            const unsigned child = (p[0] >= c[0] ? 1u : 0u) | (p[1] >= c[1] ? 2u : 0u) | (p[2] >= c[2] ? 4u : 0u);
            word = children[8 * static_cast<std::size_t>(word) + child];
        }
        const std::uint32_t e = word & kPayloadMask;
        return e == kPayloadMask ? kNoElement : e;
    }

    /// Lookup that also reports the number of internal nodes visited.
    ElementId lookup_counted(const Vec3& p, int& steps) const;
};

/// Recursive 8-way subdivision of every region overlapping more than one
/// element. Inapplicable unless every element boundary is dyadic relative to
/// the domain (tolerance 1e-12).
BuildResult<Octree> build_octree(const Partition& part);

}  // namespace lrvis::accel
