// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/flow/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrvis/core/error.hpp"

namespace lrvis::flow {

Vec3 position_at(const Streamline& line, double t) {
    const auto& s = line.samples;
    if (s.empty()) throw ValidationError("streamline has no samples");
    if (t <= s.front().t) return s.front().x;
    if (t >= s.back().t) return s.back().x;
    const auto it = std::upper_bound(s.begin(), s.end(), t, [](double v, const Sample& q) { return v < q.t; });
    const Sample& b = *it;
    const Sample& a = *(it - 1);
    const double u = (t - a.t) / (b.t - a.t);
    return a.x + (b.x - a.x) * u;
}

double streamline_error(const Streamline& approx, const Streamline& reference) {
    double sum = 0.0;
    for (std::size_t i = 1; i < approx.samples.size(); ++i) {
        const Sample& q = approx.samples[i];
        sum += (q.t - approx.samples[i - 1].t) * norm(q.x - position_at(reference, q.t));
    }
    return sum;
}

double error_metric(const std::vector<Streamline>& approx, const std::vector<Streamline>& reference) {
    if (approx.size() != reference.size())
        throw ValidationError("error metric: " + std::to_string(approx.size()) + " streamlines against " +
                              std::to_string(reference.size()) + " references");
    double e = 0.0;
    for (std::size_t j = 0; j < approx.size(); ++j) {
        const Vec3 d = approx[j].seed - reference[j].seed;
        if (norm(d) > 1e-12 * (1.0 + norm(approx[j].seed)))
            throw ValidationError("error metric: seed " + std::to_string(j) + " differs from the reference");
        e = std::max(e, streamline_error(approx[j], reference[j]));
    }
    return e;
}

double error_metric(const std::vector<Streamline>& approx, const ExactSolution& exact) {
    double e = 0.0;
    for (std::size_t j = 0; j < approx.size(); ++j) {
        const auto& s = approx[j].samples;
        double sum = 0.0;
        for (std::size_t i = 1; i < s.size(); ++i) sum += (s[i].t - s[i - 1].t) * norm(s[i].x - exact(j, s[i].t));
        e = std::max(e, sum);
    }
    return e;
}

std::vector<Streamline> reference_solution(const VectorField& field, const std::vector<Vec3>& seeds, double t_max,
                                           const ReferenceOptions& options) {
    IntegratorConfig cfg;
    cfg.method = "RKF5";
    cfg.mode = StepMode::Fixed;
    cfg.h0 = options.h.value_or(field.min_element_side() / 64.0);
    cfg.t_max = t_max;
    cfg.precision = options.precision;
    const double steps = std::ceil(t_max / cfg.h0);
    if (!(steps < 1e9)) throw ValidationError("reference step too small for t_max");
    cfg.max_samples = static_cast<std::size_t>(steps) + 2;
    return integrate_all(field, seeds, cfg, options.workers);
}

}  // namespace lrvis::flow
