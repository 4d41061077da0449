// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "lrvis/core/image.hpp"
#include "lrvis/flow/field.hpp"
#include "lrvis/flow/integrate.hpp"
#include "lrvis/volren/camera.hpp"

namespace lrvis::flow {

/// Ray parameter of the first hit with the capsule around segment [a, b],
/// or nothing. Hits behind the origin are ignored.
std::optional<double> intersect_capsule(const volren::Ray& ray, const Vec3& a, const Vec3& b, double radius);

struct TubeSettings {
    double radius = 0.01;
    Vec3 background{0.0, 0.0, 0.0};
    unsigned workers = 1;
};

/// Blue (slow) to red (fast).
Vec3 speed_color(double s);

/// Capsule per segment, nearest hit wins. Colored by |f| at the hit,
/// interpolated from the samples and normalized over the observed speed
/// range, with a headlight diffuse term.
Image render_streamlines(const std::vector<Streamline>& lines, const VectorField& field, const volren::Camera& camera,
                         const TubeSettings& settings);

}  // namespace lrvis::flow
