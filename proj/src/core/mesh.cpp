// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/core/mesh.hpp"

#include <limits>

namespace lrvis {

Box3 TriangleMesh::bounds() const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Box3 b{{inf, inf, inf}, {-inf, -inf, -inf}};
    for (const Triangle& t : triangles)
        for (const Vec3& p : t.v) {
            b.lo = cwise_min(b.lo, p);
            b.hi = cwise_max(b.hi, p);
        }
    return b;
}

}  // namespace lrvis
