// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>

#include "lrvis/core/vec.hpp"

namespace lrvis::volren {

struct Ray {
    Vec3 origin;
    Vec3 dir;  // unit length

    Vec3 at(double t) const { return origin + dir * t; }
};

/// Pinhole camera. Pixel (0, 0) is the top-left corner of the image.
struct Camera {
    Vec3 eye{0.5, 0.5, 3.0};
    Vec3 look_at{0.5, 0.5, 0.5};
    Vec3 up{0.0, 1.0, 0.0};
    double fov_y = 0.6;  // radians
    int width = 256;
    int height = 256;

    /// Throws ValidationError on a degenerate setup.
    void validate() const;

    /// Ray through the center of pixel (x, y).
    Ray ray(double x, double y) const;

    Vec3 forward() const { return normalized(look_at - eye); }
};

/// Parametric overlap of a ray with a box, or nullopt when it misses.
/// The interval is clipped to t >= 0.
std::optional<std::pair<double, double>> intersect_box(const Ray& ray, const Box3& box);

}  // namespace lrvis::volren
