// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/accel/octree.hpp"

#include <cmath>
#include <string>

#include "lrvis/accel/dyadic.hpp"
#include "lrvis/core/error.hpp"

namespace lrvis::accel {
namespace {

class OctreeBuilder {
public:
    OctreeBuilder(const Partition& part, Octree& out) : part_(part), out_(out) {}

    std::uint32_t build(const Box3& region, const std::vector<ElementId>& ids, int depth) {
        if (ids.size() == 1) return make_leaf(ids.front());
        if (ids.empty()) return make_leaf(kPayloadMask);
        if (depth > kMaxDyadicLevel) throw StructureError("octree exceeded the dyadic depth limit");
        if (out_.centers.size() >= kMaxPayload) throw StructureError("octree node count exceeds 29-bit payload");

        const Vec3 center = snapped_center(region, ids);
        const auto node = static_cast<std::uint32_t>(out_.centers.size());
        out_.centers.push_back(center);
        out_.children.resize(out_.children.size() + 8);
        out_.depth = std::max(out_.depth, depth + 1);

        for (unsigned c = 0; c < 8; ++c) {
            Box3 sub = region;
            for (int a = 0; a < 3; ++a) {
                if (c & (1u << a))
                    sub.lo[a] = center[a];
                else
                    sub.hi[a] = center[a];
            }
            std::vector<ElementId> sub_ids;
            for (ElementId e : ids)
                if (part_.boxes[e].overlaps(sub)) sub_ids.push_back(e);
            const std::uint32_t word = build(sub, sub_ids, depth + 1);
            out_.children[8 * static_cast<std::size_t>(node) + c] = word;
        }
        return node;
    }

private:
    // Region midpoint, replaced by a coinciding element boundary so that the
    // split compares against the exact stored knot value.
    Vec3 snapped_center(const Box3& region, const std::vector<ElementId>& ids) const {
        Vec3 c = region.center();
        const Vec3 ext = part_.domain.extent();
        for (int a = 0; a < 3; ++a) {
            const double tol = kLatticeTol * ext[a];
            for (ElementId e : ids) {
                const Box3& b = part_.boxes[e];
                if (std::abs(b.lo[a] - c[a]) <= tol) {
                    c[a] = b.lo[a];
                    break;
                }
                if (std::abs(b.hi[a] - c[a]) <= tol) {
                    c[a] = b.hi[a];
                    break;
                }
            }
        }
        return c;
    }

    static constexpr double kLatticeTol = 1e-12;
    const Partition& part_;
    Octree& out_;
};

}  // namespace

ElementId Octree::lookup_counted(const Vec3& p, int& steps) const {
    steps = 0;
    if (!in_domain(domain, p)) return kNoElement;
    std::uint32_t word = root;
    while (!(word & kLeafBit)) {
        ++steps;
        const Vec3& c = centers[word];
        const unsigned child = (p[0] >= c[0] ? 1u : 0u) | (p[1] >= c[1] ? 2u : 0u) | (p[2] >= c[2] ? 4u : 0u);
        word = children[8 * static_cast<std::size_t>(word) + child];
    }
    const std::uint32_t e = word & kPayloadMask;
    return e == kPayloadMask ? kNoElement : e;
}

BuildResult<Octree> build_octree(const Partition& part) {
    const Vec3 ext = part.domain.extent();
    for (std::size_t e = 0; e < part.boxes.size(); ++e) {
        for (int a = 0; a < 3; ++a) {
            for (double x : {part.boxes[e].lo[a], part.boxes[e].hi[a]}) {
                if (!dyadic_level((x - part.domain.lo[a]) / ext[a]))
                    return BuildResult<Octree>::inapplicable("knot " + std::to_string(x) + " of element " +
                                                             std::to_string(e) + " on axis " + std::to_string(a) +
                                                             " is not dyadic");
            }
        }
    }
    if (part.boxes.size() > kMaxPayload)
        return BuildResult<Octree>::inapplicable("element count exceeds 29-bit payload");

    Octree tree;
    tree.domain = part.domain;
    std::vector<ElementId> ids(part.boxes.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<ElementId>(i);
    OctreeBuilder builder(part, tree);
    tree.root = builder.build(part.domain, ids, 0);
    return BuildResult<Octree>::ok(std::move(tree));
}

}  // namespace lrvis::accel
