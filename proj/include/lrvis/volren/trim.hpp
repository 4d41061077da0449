// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lrvis/core/mesh.hpp"
#include "lrvis/volren/camera.hpp"

namespace lrvis::volren {

using Interval = std::pair<double, double>;

/// Multi: every front-face hit opens an interval closed by the next back-face
/// hit. Single: one interval from the nearest front face to the farthest back
/// face, as a front/back depth pre-pass would produce.
enum class TrimMode { Multi, Single };

struct TrimHit {
    double t = 0.0;
    bool front = false;  // the ray enters through this face
};

/// Triangle mesh with a bounding volume hierarchy for ray queries.
class TrimMesh {
public:
    TrimMesh() = default;
    explicit TrimMesh(TriangleMesh mesh);

    const TriangleMesh& mesh() const { return mesh_; }
    bool empty() const { return mesh_.triangles.empty(); }

    /// All hits with t >= 0, sorted by t, coincident hits on shared edges merged.
    std::vector<TrimHit> hits(const Ray& ray) const;

    /// Same result by testing every triangle.
    std::vector<TrimHit> hits_brute_force(const Ray& ray) const;

private:
    struct Node {
        Box3 box;
        std::uint32_t first = 0;  // leaf: first triangle; inner: right child
        std::uint32_t count = 0;  // triangles in a leaf, 0 for inner nodes
    };
    std::uint32_t build(std::uint32_t first, std::uint32_t count);

    TriangleMesh mesh_;
    std::vector<Node> nodes_;
};

struct TrimResult {
    std::vector<Interval> intervals;  // ascending and disjoint
    bool unpaired_hit = false;        // odd hit count; the last unpaired hit was dropped
};

/// Möller-Trumbore test; false on a miss or a hit behind the origin.
bool intersect_triangle(const Ray& ray, const Triangle& tri, double& t, bool& front);

/// Pairs sorted hits into inside intervals.
TrimResult pair_hits(const std::vector<TrimHit>& hits, TrimMode mode);

TrimResult trim_intervals(const Ray& ray, const TrimMesh& mesh, TrimMode mode = TrimMode::Multi);

/// Intersection of two sorted disjoint interval lists.
std::vector<Interval> intersect_intervals(const std::vector<Interval>& a, const std::vector<Interval>& b);

}  // namespace lrvis::volren
