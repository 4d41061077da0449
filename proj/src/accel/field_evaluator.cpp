// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/accel/field_evaluator.hpp"

namespace lrvis::accel {

FieldEvaluator::FieldEvaluator(const lr::LRSplineVolume& vol, std::optional<std::array<int, 3>> grid)
    : bezier_(lr::to_bezier_volume(vol)), bezier_f_(lr::to_single(bezier_)), partition_(Partition::from(vol)) {
    const int g = default_forest_grid(partition_.size());
    forest_ = build_kdforest(partition_, grid.value_or(std::array<int, 3>{g, g, g}));
    step_.reserve(partition_.size());
    for (const Box3& b : partition_.boxes) step_.push_back(lr::local_step(b, vol.degrees));
    min_side_ = lr::min_element_side(vol);
}

bool FieldEvaluator::eval(const Vec3& p, std::span<double> out) const {
    const ElementId e = forest_.lookup(p);
    if (e == kNoElement) return false;
    lr::eval_bezier(bezier_.blocks[e], p, out);
    return true;
}

bool FieldEvaluator::eval_gradient(const Vec3& p, std::span<double> value, std::span<double> grad) const {
    const ElementId e = forest_.lookup(p);
    if (e == kNoElement) return false;
    lr::eval_bezier_gradient(bezier_.blocks[e], p, value, grad);
    return true;
}

bool FieldEvaluator::eval_f32(const Vec3f& p, std::span<float> out) const {
    const ElementId e = forest_.lookup(Vec3(p));
    if (e == kNoElement) return false;
    lr::eval_bezier(bezier_f_.blocks[e], p, out);
    return true;
}

}  // namespace lrvis::accel
