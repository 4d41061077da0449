// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lrvis/accel/packed.hpp"
#include "lrvis/accel/partition.hpp"
#include "lrvis/core/error.hpp"

namespace lrvis::accel {

/// Regular I x J x K block grid over the domain; each block either names its
/// single element directly or points at a k-d tree in the shared node array.
///
/// Node layout: an internal node's right child is the next slot, its left
/// child is the payload. `splits` holds the exact split of every node next to
/// the float copy in `nodes`, so lookup() is exact for any knot value while
/// lookup_packed() reproduces the 32-bit traversal bit for bit.
struct KdForest {
    Box3 domain;
    std::array<int, 3> grid{1, 1, 1};
    std::array<AxisBins, 3> bins;
    std::vector<std::uint32_t> roots;  // x fastest
    std::vector<PackedNode> nodes;
    std::vector<double> splits;
    std::vector<int> block_depth;  // internal nodes on the longest path, per block

    std::size_t block_index(const Vec3& p) const {
        const std::size_t i = static_cast<std::size_t>(bins[0].bin(p[0]));
        const std::size_t j = static_cast<std::size_t>(bins[1].bin(p[1]));
        const std::size_t k = static_cast<std::size_t>(bins[2].bin(p[2]));
        return i + static_cast<std::size_t>(grid[0]) * (j + static_cast<std::size_t>(grid[1]) * k);
    }

    ElementId lookup(const Vec3& p) const {
        if (!in_domain(domain, p)) return kNoElement;
        std::uint32_t word = roots[block_index(p)];
        if (word & kLeafBit) return leaf_element(word);
        std::uint32_t idx = word & kPayloadMask;
        for (std::size_t guard = 0; guard <= nodes.size(); ++guard) {
            const std::uint32_t w = nodes[idx].word_r;
            if (w & kLeafBit) return leaf_element(w);
            idx = p[axis_of(w)] < splits[idx] ? (w & kPayloadMask) : idx + 1;
        }
        throw StructureError("k-d forest traversal exceeded node count");
    }

    /// Traversal on the packed words alone with the query rounded to float.
    ElementId lookup_packed(const Vec3& p) const;

    /// lookup() that also reports how many internal nodes were visited.
    ElementId lookup_counted(const Vec3& p, int& steps) const;

    int max_depth() const;

    static ElementId leaf_element(std::uint32_t word) {
        const std::uint32_t e = word & kPayloadMask;
        return e == kPayloadMask ? kNoElement : e;
    }
};

struct DepthStats {
    double min_depth = 0.0;
    double max_depth = 0.0;
    double mean_depth = 0.0;
    double var_depth = 0.0;
};

/// Appends a depth-balanced k-d tree over `ids` restricted to `region` and
/// returns its root word. Reports the tree depth through `depth`.
std::uint32_t append_kdtree(const Partition& part, const std::vector<ElementId>& ids, const Box3& region,
                            std::vector<PackedNode>& nodes, std::vector<double>& splits, int& depth);

/// Forest on an I x J x K block grid. Throws StructureError on a malformed
/// partition or when the 29-bit payload overflows.
KdForest build_kdforest(const Partition& part, std::array<int, 3> grid);

/// A single k-d tree over the whole domain (forest with one block).
inline KdForest build_kdtree(const Partition& part) { return build_kdforest(part, {1, 1, 1}); }

/// clamp(round(cbrt(N)), 1, 512) blocks per axis.
int default_forest_grid(std::size_t element_count);

DepthStats depth_stats(const KdForest& forest);

}  // namespace lrvis::accel
