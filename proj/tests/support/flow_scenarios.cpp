// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "flow_scenarios.hpp"

#include <cmath>
#include <numbers>

#include "lrvis/accel/field_evaluator.hpp"
#include "lrvis/io/synthetic.hpp"

namespace lrvis::testing {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

AnalyticField rotation(const Vec3& center) {
    AnalyticField f;
    f.kind = AnalyticKind::Rotational;
    f.center = center;
    f.scale = 1.0;
    return f;
}

}  // namespace

flow::AnalyticVectorField rotational_field() {
    return flow::AnalyticVectorField(rotation({0.0, 0.0, 0.0}), Box3{{-2.0, -2.0, -2.0}, {2.0, 2.0, 2.0}});
}

Vec3 rotate_about_z(const Vec3& seed, const Vec3& center, double t) {
    const Vec3 d = seed - center;
    const double c = std::cos(t), s = std::sin(t);
    return center + Vec3(c * d[0] - s * d[1], s * d[0] + c * d[1], d[2]);
}

ConvergenceReport rk_convergence(const std::string& method, flow::Precision precision, int k_lo, int k_hi) {
    const auto field = rotational_field();
    const std::vector<Vec3> seeds{{1.0, 0.0, 0.0}};
    ConvergenceReport r;
    for (int k = k_lo; k <= k_hi; ++k) {
        flow::IntegratorConfig cfg;
        cfg.method = method;
        cfg.h0 = kTwoPi / std::ldexp(1.0, k);
        cfg.t_max = kTwoPi;
        cfg.precision = precision;
        const auto lines = flow::integrate_all(field, seeds, cfg);
        r.steps.push_back(cfg.h0);
        r.errors.push_back(flow::error_metric(lines, [&](std::size_t j, double t) {
            return rotate_about_z(seeds[j], {0.0, 0.0, 0.0}, t);
        }));
    }
    r.slope = flow::loglog_slope(r.steps, r.errors);
    return r;
}

SweepReport tolerance_sweep(const std::string& method) {
    const auto field = rotational_field();
    const std::vector<Vec3> seeds{{1.0, 0.0, 0.0}, {0.5, 0.3, 0.2}, {-0.2, 0.7, -0.4}};
    SweepReport r;
    for (double tol : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        flow::IntegratorConfig cfg;
        cfg.method = method;
        cfg.mode = flow::StepMode::Embedded;
        cfg.tol = tol;
        cfg.h0 = 0.1;
        cfg.t_max = kTwoPi;
        cfg.max_samples = 1000000;
        const auto lines = flow::integrate_all(field, seeds, cfg);
        r.params.push_back(tol);
        r.evals.push_back(flow::total_field_evals(lines));
        r.errors.push_back(flow::error_metric(lines, [&](std::size_t j, double t) {
            return rotate_about_z(seeds[j], {0.0, 0.0, 0.0}, t);
        }));
    }
    return r;
}

SweepReport heuristic_sweep(const std::string& method) {
    AnalyticField vortex;
    vortex.kind = AnalyticKind::Vortex;
    vortex.center = {0.5, 0.5, 0.5};
    vortex.scale = 0.25;
    vortex.drift = 0.1;
    io::SyntheticSpec spec;
    spec.kind = io::SyntheticKind::DyadicMultiscale;
    spec.levels = 3;
    spec.degrees = {{2, 2, 2}};
    spec.field = vortex;
    const auto eval = std::make_shared<accel::FieldEvaluator>(io::generate_synthetic(spec));
    const flow::SplineVectorField field(eval);

    const std::vector<Vec3> seeds{{0.6, 0.5, 0.3}, {0.5, 0.7, 0.4}, {0.3, 0.45, 0.5}, {0.55, 0.55, 0.2}};
    const double t_max = 2.0;
    const auto reference = flow::reference_solution(field, seeds, t_max);
    SweepReport r;
    for (double scale : {8.0, 4.0, 2.0, 1.0, 0.5}) {
        flow::IntegratorConfig cfg;
        cfg.method = method;
        cfg.mode = flow::StepMode::Heuristic;
        cfg.h0 = scale;
        cfg.t_max = t_max;
        cfg.max_samples = 1000000;
        const auto lines = flow::integrate_all(field, seeds, cfg);
        r.params.push_back(scale);
        r.evals.push_back(flow::total_field_evals(lines));
        r.errors.push_back(flow::error_metric(lines, reference));
    }
    return r;
}

PrecisionReport precision_study() {
    const Vec3 focus{0.7, 0.6, 0.55};
    io::SyntheticSpec spec;
    spec.kind = io::SyntheticKind::DyadicMultiscale;
    spec.levels = 13;
    spec.base_cells = 8;
    spec.degrees = {{1, 1, 1}};
    spec.field = rotation(focus);
    const auto eval = std::make_shared<accel::FieldEvaluator>(io::generate_synthetic(spec));
    const flow::SplineVectorField field(eval);

    PrecisionReport r;
    r.min_side = eval->min_element_side();
    const double radius = 4.0 * r.min_side;
    const std::vector<Vec3> seeds{focus + Vec3(radius, 0.0, 0.0), focus + Vec3(0.0, 0.7 * radius, 0.0),
                                  focus + Vec3(-0.5 * radius, -0.5 * radius, 0.0)};
    const flow::ExactSolution exact = [&](std::size_t j, double t) { return rotate_about_z(seeds[j], focus, t); };
    for (int n : {32, 64, 128, 256, 512, 1024}) {
        flow::IntegratorConfig cfg;
        cfg.method = "RK4";
        cfg.h0 = kTwoPi / n;
        cfg.t_max = kTwoPi;
        cfg.max_samples = 100000;
        r.steps.push_back(cfg.h0);
        cfg.precision = flow::Precision::Mixed;
        r.mixed.push_back(flow::error_metric(flow::integrate_all(field, seeds, cfg), exact));
        cfg.precision = flow::Precision::Single;
        r.single.push_back(flow::error_metric(flow::integrate_all(field, seeds, cfg), exact));
    }
    return r;
}

}  // namespace lrvis::testing
