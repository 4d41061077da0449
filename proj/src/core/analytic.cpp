// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/core/analytic.hpp"

#include <cmath>

#include "lrvis/core/error.hpp"

namespace lrvis {

const char* to_string(AnalyticKind kind) {
    switch (kind) {
        case AnalyticKind::Constant: return "constant";
        case AnalyticKind::Ramp: return "ramp";
        case AnalyticKind::Gaussian: return "gaussian";
        case AnalyticKind::Sine: return "sine";
        case AnalyticKind::Rotational: return "rotational";
        case AnalyticKind::Vortex: return "vortex";
    }
    return "?";
}

AnalyticKind analytic_kind_from_string(const std::string& name) {
    for (auto k : {AnalyticKind::Constant, AnalyticKind::Ramp, AnalyticKind::Gaussian, AnalyticKind::Sine,
                   AnalyticKind::Rotational, AnalyticKind::Vortex})
        if (name == to_string(k)) return k;
    throw ValidationError("unknown analytic field '" + name + "'");
}

int AnalyticField::range_dim() const {
    switch (kind) {
        case AnalyticKind::Constant: return static_cast<int>(constant.size());
        case AnalyticKind::Rotational:
        case AnalyticKind::Vortex: return 3;
        default: return 1;
    }
}

void AnalyticField::eval(const Vec3& p, std::span<double> out) const {
    const Vec3 d = p - center;
    switch (kind) {
        case AnalyticKind::Constant:
            for (std::size_t i = 0; i < constant.size(); ++i) out[i] = constant[i];
            return;
        case AnalyticKind::Ramp: out[0] = dot(gradient, d); return;
        case AnalyticKind::Gaussian: out[0] = std::exp(-dot(d, d) / (2.0 * scale * scale)); return;
        case AnalyticKind::Sine: out[0] = std::sin(scale * p[0]) * std::sin(scale * p[1]) * std::sin(scale * p[2]); return;
        case AnalyticKind::Rotational:
            out[0] = -scale * d[1];
            out[1] = scale * d[0];
            out[2] = 0.0;
            return;
        case AnalyticKind::Vortex: {
            const double r2 = d[0] * d[0] + d[1] * d[1];
            const double w = std::exp(-r2 / (2.0 * scale * scale));
            out[0] = -w * d[1] / scale;
            out[1] = w * d[0] / scale;
            out[2] = drift;
            return;
        }
    }
}

std::vector<double> AnalyticField::eval(const Vec3& p) const {
    std::vector<double> out(static_cast<std::size_t>(range_dim()));
    eval(p, out);
    return out;
}

}  // namespace lrvis
