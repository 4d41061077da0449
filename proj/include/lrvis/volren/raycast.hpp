// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "lrvis/accel/field_evaluator.hpp"
#include "lrvis/core/image.hpp"
#include "lrvis/volren/camera.hpp"
#include "lrvis/volren/composite.hpp"
#include "lrvis/volren/transfer_function.hpp"
#include "lrvis/volren/trim.hpp"

namespace lrvis::volren {

enum class SamplingMode { Uniform, Adaptive };

const char* to_string(SamplingMode mode);
SamplingMode sampling_mode_from_string(const std::string& name);

struct RenderSettings {
    double xi = 0.0;               // standard length; 0 selects domain diagonal / 256
    int supersamples = 4;          // K sub-compositions per segment
    double threshold = 0.995;      // early ray termination opacity
    double base_step_scale = 1.0;  // multiplies the element-derived step
    double step = 0.0;             // uniform mode only: explicit step, 0 selects the finest element step
    SamplingMode mode = SamplingMode::Adaptive;
    bool lighting = false;
    Vec3 light_dir;                // zero vector: headlight along the ray
    Vec3 background{0.0, 0.0, 0.0};
    TrimMode trim_mode = TrimMode::Multi;

    void validate() const;
    double resolved_xi(const Box3& domain) const { return xi > 0.0 ? xi : domain.diagonal() / 256.0; }
};

/// Instrumentation counters; summed over rays.
struct RayStats {
    std::uint64_t evaluations = 0;    // field (and gradient) evaluations
    std::uint64_t segments = 0;
    std::uint64_t lookup_misses = 0;  // samples whose element lookup failed
    std::uint64_t unpaired_trim = 0;  // rays with an odd trim hit count

    RayStats& operator+=(const RayStats& o) {
        evaluations += o.evaluations;
        segments += o.segments;
        lookup_misses += o.lookup_misses;
        unpaired_trim += o.unpaired_trim;
        return *this;
    }
};

struct RayResult {
    CompositeState state;
    Vec3 color;  // background composited behind the volume
};

/// Marches one ray through the volume (restricted to the trim mesh when given).
/// Scalar datasets use their value; vector datasets their magnitude, unlit.
RayResult march_ray(const Ray& ray, const accel::FieldEvaluator& field, const TransferFunction& tf,
                    const RenderSettings& settings, const TrimMesh* trim, RayStats& stats);

struct RenderResult {
    Image image;
    RayStats stats;
};

/// Renders every pixel; rows are distributed over `workers` threads and the
/// image does not depend on the worker count.
RenderResult render(const accel::FieldEvaluator& field, const Camera& camera, const TransferFunction& tf,
                    const RenderSettings& settings, const TrimMesh* trim = nullptr, unsigned workers = 1);

}  // namespace lrvis::volren
