// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/volren/transfer_function.hpp"

#include <algorithm>
#include <string>

#include "lrvis/core/error.hpp"

namespace lrvis::volren {
namespace {

bool unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

TransferFunction::TransferFunction(std::vector<ControlPoint> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw ValidationError("transfer function needs at least two control points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const ControlPoint& c = points_[i];
        if (!std::isfinite(c.value)) throw ValidationError("transfer function point " + std::to_string(i) + ": value is not finite");
        if (i > 0 && !(points_[i - 1].value < c.value))
            throw ValidationError("transfer function point " + std::to_string(i) + ": keys must increase strictly");
        if (!unit(c.color[0]) || !unit(c.color[1]) || !unit(c.color[2]) || !unit(c.alpha))
            throw ValidationError("transfer function point " + std::to_string(i) + ": components must lie in [0, 1]");
    }
}

TfSample TransferFunction::operator()(double value) const {
    if (!(value > points_.front().value)) return {points_.front().color, points_.front().alpha};
    if (value >= points_.back().value) return {points_.back().color, points_.back().alpha};
    const auto hi = std::upper_bound(points_.begin(), points_.end(), value,
                                     [](double v, const ControlPoint& c) { return v < c.value; });
    const auto lo = hi - 1;
    const double s = (value - lo->value) / (hi->value - lo->value);
    return {lo->color + (hi->color - lo->color) * s, lo->alpha + (hi->alpha - lo->alpha) * s};
}

TransferFunction TransferFunction::transparent(double lo, double hi) {
    return TransferFunction({{lo, {}, 0.0}, {hi, {}, 0.0}});
}

TransferFunction TransferFunction::constant(const Vec3& color, double alpha, double lo, double hi) {
    return TransferFunction({{lo, color, alpha}, {hi, color, alpha}});
}

TransferFunction TransferFunction::step(double threshold, const Vec3& color, double alpha, double width) {
    return TransferFunction({{threshold, color, 0.0}, {threshold + width, color, alpha}});
}

}  // namespace lrvis::volren
