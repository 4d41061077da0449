// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "lrvis/core/vec.hpp"

namespace lrvis {

enum class AnalyticKind {
    Constant,    // value = `constant`
    Ramp,        // gradient . (p - center)
    Gaussian,    // exp(-|p - center|^2 / (2 scale^2))
    Sine,        // sin(scale x) sin(scale y) sin(scale z)
    Rotational,  // scale * (-(y - cy), x - cx, 0)
    Vortex,      // Gaussian-damped rotation around the center plus a drift along z
};

const char* to_string(AnalyticKind kind);
AnalyticKind analytic_kind_from_string(const std::string& name);

/// Closed-form field used as ground truth for synthetic datasets and as an
/// integration target in its own right.
struct AnalyticField {
    AnalyticKind kind = AnalyticKind::Ramp;
    Vec3 center{0.5, 0.5, 0.5};
    double scale = 1.0;
    Vec3 gradient{1.0, 2.0, 3.0};
    std::vector<double> constant{1.0};
    double drift = 0.1;

    int range_dim() const;
    void eval(const Vec3& p, std::span<double> out) const;
    std::vector<double> eval(const Vec3& p) const;
};

}  // namespace lrvis
