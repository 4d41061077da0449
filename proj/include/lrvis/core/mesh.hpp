// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "lrvis/core/vec.hpp"

namespace lrvis {

struct Triangle {
    std::array<Vec3, 3> v;

    Vec3 normal() const { return cross(v[1] - v[0], v[2] - v[0]); }
    friend bool operator==(const Triangle&, const Triangle&) = default;
};

/// Triangle soup as read from an STL file.
struct TriangleMesh {
    std::vector<Triangle> triangles;
    std::size_t dropped_degenerate = 0;

    Box3 bounds() const;
};

}  // namespace lrvis
