// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "lrvis/volren/raycast.hpp"

namespace lrvis::testing {

/// Constant field, constant transfer function (white, alpha_src), one ray
/// along x through the unit cube with xi = length / length_over_xi.
volren::RayResult homogeneous_ray(double alpha_src, double length_over_xi, double ds_over_xi, int supersamples = 1);

struct SupersamplingReport {
    double max_error = 0.0;  // max |marched - analytic| over pixels, [0, 1] units
    int pixels = 0;          // rays that hit the volume
};

/// Step transfer function on the linear ramp x - 0.5, uniform step xi/4,
/// compared per pixel with the exact composite of the step's support.
SupersamplingReport supersampling_error(int supersamples);

struct AdaptiveReport {
    std::uint64_t uniform_evaluations = 0;
    std::uint64_t adaptive_evaluations = 0;
    int max_channel_diff = 0;  // 0..255
    double side_ratio = 0.0;
};

/// Renders the dyadic multiscale set (three levels) in uniform mode at the
/// finest element step and in adaptive mode.
AdaptiveReport adaptive_vs_uniform(int width = 64, int height = 64);


struct TrimReport {
    int missed_rays = 0;
    int missed_not_background = 0;   // missed rays whose pixel differs from the background
    int hit_rays = 0;
    double max_endpoint_error = 0.0; // trim interval ends vs analytic slab intersection
    double max_alpha_error = 0.0;    // composite vs 1 - (1 - a)^(chord / xi)
};

/// Homogeneous volume on [-1, 2]^3 trimmed by the unit-cube STL mesh.
TrimReport trimming_check(int width = 32, int height = 32);

}  // namespace lrvis::testing
