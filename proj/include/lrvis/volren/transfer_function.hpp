// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "lrvis/core/vec.hpp"

namespace lrvis::volren {

struct ControlPoint {
    double value = 0.0;
    Vec3 color;
    double alpha = 0.0;
};

struct TfSample {
    Vec3 color;
    double alpha = 0.0;
};

/// Piecewise-linear map from scalar value to color and opacity. Keys are in
/// data units; values outside [front, back] clamp to the end points.
class TransferFunction {
public:
    TransferFunction() = default;

    /// Throws ValidationError unless there are at least two points, keys are
    /// strictly increasing and all components lie in [0, 1].
    explicit TransferFunction(std::vector<ControlPoint> points);

    TfSample operator()(double value) const;

    const std::vector<ControlPoint>& points() const { return points_; }
    double min_value() const { return points_.front().value; }
    double max_value() const { return points_.back().value; }

    /// Zero opacity everywhere.
    static TransferFunction transparent(double lo = 0.0, double hi = 1.0);

    /// Constant color and opacity.
    static TransferFunction constant(const Vec3& color, double alpha, double lo = 0.0, double hi = 1.0);

    /// Transparent below `threshold`, (color, alpha) above; the jump is a
    /// linear ramp of width `width` starting at the threshold.
    static TransferFunction step(double threshold, const Vec3& color, double alpha, double width = 1e-9);

private:
    std::vector<ControlPoint> points_{{0.0, {}, 0.0}, {1.0, {}, 0.0}};
};

}  // namespace lrvis::volren
