// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/volren/camera.hpp"

#include <cmath>
#include <limits>

#include "lrvis/core/error.hpp"

namespace lrvis::volren {

void Camera::validate() const {
    if (width < 1 || height < 1) throw ValidationError("camera: image size must be positive");
    if (!(fov_y > 0.0 && fov_y < M_PI)) throw ValidationError("camera: fov must lie in (0, pi)");
    const Vec3 f = look_at - eye;
    if (!(norm(f) > 0.0)) throw ValidationError("camera: eye and look_at coincide");
    if (!(norm(cross(normalized(f), normalized(up))) > 1e-9)) throw ValidationError("camera: up is parallel to the view direction");
}

Ray Camera::ray(double x, double y) const {
    const Vec3 f = forward();
    const Vec3 r = normalized(cross(f, up));
    const Vec3 u = cross(r, f);
    const double half_h = std::tan(0.5 * fov_y);
    const double half_w = half_h * static_cast<double>(width) / static_cast<double>(height);
    const double sx = (2.0 * (x + 0.5) / width - 1.0) * half_w;
    const double sy = (1.0 - 2.0 * (y + 0.5) / height) * half_h;
    return {eye, normalized(f + r * sx + u * sy)};
}

std::optional<std::pair<double, double>> intersect_box(const Ray& ray, const Box3& box) {
    double t0 = 0.0, t1 = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {
        if (ray.dir[a] == 0.0) {
            if (ray.origin[a] < box.lo[a] || ray.origin[a] > box.hi[a]) return std::nullopt;
            continue;
        }
        const double inv = 1.0 / ray.dir[a];
        double ta = (box.lo[a] - ray.origin[a]) * inv;
        double tb = (box.hi[a] - ray.origin[a]) * inv;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
    }
    if (!(t0 < t1)) return std::nullopt;
    return std::make_pair(t0, t1);
}

}  // namespace lrvis::volren
