// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <span>

#include "lrvis/accel/kdforest.hpp"
#include "lrvis/accel/partition.hpp"
#include "lrvis/lr/bezier.hpp"
#include "lrvis/lr/volume.hpp"

namespace lrvis::accel {

/// Evaluation pipeline used by the renderer and the tracer: forest lookup
/// followed by De Casteljau on the element's Bezier block, in 64 or 32 bit.
/// Immutable after construction.
class FieldEvaluator {
public:
    /// `vol` must have bound supports. Forest grid defaults to
    /// default_forest_grid(element count) per axis.
    explicit FieldEvaluator(const lr::LRSplineVolume& vol, std::optional<std::array<int, 3>> grid = std::nullopt);

    const Box3& domain() const { return bezier_.domain; }
    int range_dim() const { return bezier_.range_dim; }
    const lr::TriDegree& degrees() const { return bezier_.degrees; }
    std::size_t element_count() const { return bezier_.blocks.size(); }
    const Partition& partition() const { return partition_; }
    const KdForest& forest() const { return forest_; }
    const lr::BezierVolume& bezier() const { return bezier_; }

    ElementId locate(const Vec3& p) const { return forest_.lookup(p); }

    /// False (and `out` untouched) when p is outside the domain.
    bool eval(const Vec3& p, std::span<double> out) const;
    bool eval_gradient(const Vec3& p, std::span<double> value, std::span<double> grad) const;

    /// 32-bit path: p rounded to float, float coefficients and arithmetic.
    bool eval_f32(const Vec3f& p, std::span<float> out) const;

    /// Sampling distance of the element: min side / 2^max degree.
    double local_step(ElementId e) const { return step_[e]; }
    double min_element_side() const { return min_side_; }

private:
    lr::BezierVolume bezier_;
    lr::BezierVolumeF bezier_f_;
    Partition partition_;
    KdForest forest_;
    std::vector<double> step_;
    double min_side_ = 0.0;
};

}  // namespace lrvis::accel
