// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>

#include "lrvis/core/vec.hpp"
#include "lrvis/lr/volume.hpp"

namespace lrvis::volren {

/// Accumulated radiance and opacity of one ray.
struct CompositeState {
    Vec3 color;
    double alpha = 0.0;
    double t = 0.0;
};

/// Front-to-back step with opacity correction: T = (1 - alpha_src)^(ds / xi).
inline void composite_step(CompositeState& s, const Vec3& c_src, double alpha_src, double ds, double xi) {
    if (!(alpha_src > 0.0)) return;
    const double transmit = alpha_src >= 1.0 ? 0.0 : std::pow(1.0 - alpha_src, ds / xi);
    const double w = (1.0 - transmit) * (1.0 - s.alpha);
    s.color += c_src * w;
    s.alpha += w;
}

/// min side of the element / 2^d with d the largest of the three degrees.
inline double adaptive_step(const Box3& element, const lr::TriDegree& degrees) {
    return lr::local_step(element, degrees);
}

/// max(0.4, |l . n|) with n the normalized gradient; 0.4 for vanishing gradients.
inline double shade_diffuse(const Vec3& gradient, const Vec3& light) {
    const double g = norm(gradient);
    if (!(g >= 1e-12)) return 0.4;
    return std::clamp(std::abs(dot(light, gradient / g)), 0.4, 1.0);
}

}  // namespace lrvis::volren
