// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "render_scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "datasets.hpp"
#include "lrvis/io/stl.hpp"

namespace lrvis::testing {
namespace {

lr::LRSplineVolume constant_volume(double value) {
    AnalyticField f;
    f.kind = AnalyticKind::Constant;
    f.constant = {value};
    return uniform_dataset(1, 0, f);
}

}  // namespace

volren::RayResult homogeneous_ray(double alpha_src, double length_over_xi, double ds_over_xi, int supersamples) {
    const accel::FieldEvaluator field(constant_volume(0.5));
    const auto tf = volren::TransferFunction::constant({1.0, 1.0, 1.0}, alpha_src);
    volren::RenderSettings s;
    s.xi = 1.0 / length_over_xi;
    s.mode = volren::SamplingMode::Uniform;
    s.step = s.xi * ds_over_xi;
    s.supersamples = supersamples;
    s.threshold = 1.0;
    volren::RayStats stats;
    return volren::march_ray({{-1.0, 0.5, 0.5}, {1.0, 0.0, 0.0}}, field, tf, s, nullptr, stats);
}

SupersamplingReport supersampling_error(int supersamples) {
    AnalyticField ramp;
    ramp.kind = AnalyticKind::Ramp;
    ramp.gradient = {1.0, 0.0, 0.0};
    const accel::FieldEvaluator field(uniform_dataset(1, 0, ramp));
    constexpr double kThreshold = 0.1;  // support of the step: x > 0.6
    constexpr double kAlpha = 0.5;
    const auto tf = volren::TransferFunction::step(kThreshold, {1.0, 1.0, 1.0}, kAlpha);

    volren::RenderSettings s;
    s.xi = 0.1;
    s.mode = volren::SamplingMode::Uniform;
    s.step = s.xi / 4.0;
    s.supersamples = supersamples;
    s.threshold = 1.0;

    volren::Camera cam;
    cam.eye = {-1.2, 0.35, 0.6};
    cam.look_at = {0.5, 0.5, 0.5};
    cam.fov_y = 0.7;
    cam.width = 24;
    cam.height = 24;

    SupersamplingReport rep;
    for (int y = 0; y < cam.height; ++y)
        for (int x = 0; x < cam.width; ++x) {
            const volren::Ray ray = cam.ray(x, y);
            const auto box = volren::intersect_box(ray, field.domain());
            if (!box) continue;
            // x(t) is monotone along the ray: the support is one sub-interval.
            const double t_cross = (0.5 + kThreshold - ray.origin[0]) / ray.dir[0];
            const double lo = std::max(box->first, ray.dir[0] > 0 ? t_cross : -INFINITY);
            const double hi = std::min(box->second, ray.dir[0] > 0 ? INFINITY : t_cross);
            const double len = std::max(0.0, hi - lo);
            const double exact = 1.0 - std::pow(1.0 - kAlpha, len / s.xi);
            volren::RayStats stats;
            const auto r = volren::march_ray(ray, field, tf, s, nullptr, stats);
            rep.max_error = std::max(rep.max_error, std::abs(r.color[0] - exact));
            ++rep.pixels;
        }
    return rep;
}

AdaptiveReport adaptive_vs_uniform(int width, int height) {
    const auto vol = dyadic_dataset(2, 3);
    AdaptiveReport rep;
    double lo = INFINITY, hi = 0.0;
    for (const auto& e : vol.elements) {
        const Vec3 ext = e.box.extent();
        lo = std::min(lo, std::max({ext[0], ext[1], ext[2]}));
        hi = std::max(hi, std::max({ext[0], ext[1], ext[2]}));
    }
    rep.side_ratio = hi / lo;

    const accel::FieldEvaluator field(vol);
    const volren::TransferFunction tf({{-1.0, {0.1, 0.2, 0.9}, 0.0},
                                       {0.0, {0.2, 0.8, 0.3}, 0.02},
                                       {1.0, {1.0, 0.3, 0.1}, 0.08}});
    volren::Camera cam;
    cam.eye = {1.9, 1.4, 2.2};
    cam.look_at = {0.5, 0.5, 0.5};
    cam.width = width;
    cam.height = height;

    volren::RenderSettings s;
    s.mode = volren::SamplingMode::Uniform;
    const auto uni = volren::render(field, cam, tf, s);
    s.mode = volren::SamplingMode::Adaptive;
    const auto ada = volren::render(field, cam, tf, s);
    rep.uniform_evaluations = uni.stats.evaluations;
    rep.adaptive_evaluations = ada.stats.evaluations;
    for (std::size_t i = 0; i < uni.image.rgba.size(); ++i)
        rep.max_channel_diff = std::max(rep.max_channel_diff, std::abs(int(uni.image.rgba[i]) - int(ada.image.rgba[i])));
    return rep;
}


TrimReport trimming_check(int width, int height) {
    io::SyntheticSpec spec;
    spec.kind = io::SyntheticKind::Uniform;
    spec.degrees = {{1, 1, 1}};
    spec.domain = {{-1.0, -1.0, -1.0}, {2.0, 2.0, 2.0}};
    spec.field.kind = AnalyticKind::Constant;
    spec.field.constant = {0.5};
    const accel::FieldEvaluator field(io::generate_synthetic(spec));

    const Box3 cube{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
    const volren::TrimMesh mesh(io::parse_stl(io::stl_binary(io::box_triangles(cube))));
    constexpr double kAlpha = 0.3;
    const auto tf = volren::TransferFunction::constant({0.9, 0.6, 0.3}, kAlpha);

    volren::RenderSettings s;
    s.xi = 0.2;
    s.threshold = 1.0;
    s.background = {0.25, 0.5, 0.75};

    volren::Camera cam;
    cam.eye = {2.6, 1.9, 3.1};
    cam.look_at = {0.5, 0.5, 0.5};
    cam.fov_y = 0.9;
    cam.width = width;
    cam.height = height;

    TrimReport rep;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const volren::Ray ray = cam.ray(x, y);
            const auto chord = volren::intersect_box(ray, cube);
            volren::RayStats stats;
            const auto r = volren::march_ray(ray, field, tf, s, &mesh, stats);
            if (!chord) {
                ++rep.missed_rays;
                if (!(r.color == s.background)) ++rep.missed_not_background;
                continue;
            }
            ++rep.hit_rays;
            const auto tr = volren::trim_intervals(ray, mesh);
            if (tr.intervals.size() != 1) {
                rep.max_endpoint_error = INFINITY;
                continue;
            }
            rep.max_endpoint_error = std::max({rep.max_endpoint_error, std::abs(tr.intervals[0].first - chord->first),
                                               std::abs(tr.intervals[0].second - chord->second)});
            const double exact = 1.0 - std::pow(1.0 - kAlpha, (chord->second - chord->first) / s.xi);
            rep.max_alpha_error = std::max(rep.max_alpha_error, std::abs(r.state.alpha - exact));
        }
    return rep;
}

}  // namespace lrvis::testing
