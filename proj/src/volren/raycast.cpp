// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/volren/raycast.hpp"

#include <array>
#include <vector>

#include "lrvis/core/error.hpp"
#include "lrvis/core/parallel.hpp"

namespace lrvis::volren {
namespace {

struct Sample {
    double value = 0.0;
    double shade = 1.0;
    bool valid = false;
};

class Marcher {
public:
    Marcher(const accel::FieldEvaluator& field, const TransferFunction& tf, const RenderSettings& s, const Ray& ray,
            RayStats& stats)
        : field_(field), tf_(tf), s_(s), ray_(ray), stats_(stats), xi_(s.resolved_xi(field.domain())) {
        light_ = norm(s.light_dir) > 0.0 ? normalized(s.light_dir) : -ray.dir;
        lit_ = s.lighting && field.range_dim() == 1;
        buf_.resize(static_cast<std::size_t>(field.range_dim()));
        const int d = std::max({field.degrees()[0], field.degrees()[1], field.degrees()[2]});
        finest_ = std::ldexp(field.min_element_side(), -d) * s.base_step_scale;
        uniform_ = s.step > 0.0 ? s.step : finest_;
    }

    void run(const Interval& iv, CompositeState& st) {
        double t = iv.first;
        Sample a = sample(t);
        while (t < iv.second && st.alpha < s_.threshold) {
            const double ds = std::min(step_at(t), iv.second - t);
            const double t_next = t + ds >= iv.second ? iv.second : t + ds;
            const Sample b = sample(t_next);
            ++stats_.segments;
            composite_segment(a, b, t_next - t, st);
            a = b;
            t = t_next;
        }
        st.t = t;
    }

private:
    Vec3 point(double t) const { return field_.domain().clamp(ray_.at(t)); }

    double step_at(double t) {
        if (s_.mode == SamplingMode::Uniform) return uniform_;
        const accel::ElementId e = field_.locate(point(t));
        if (e == accel::kNoElement) {
            ++stats_.lookup_misses;
            return finest_;
        }
        return field_.local_step(e) * s_.base_step_scale;
    }

    Sample sample(double t) {
        Sample out;
        const Vec3 p = point(t);
        ++stats_.evaluations;
        if (lit_) {
            double v, g[3];
            out.valid = field_.eval_gradient(p, {&v, 1}, g);
            out.value = v;
            if (out.valid) out.shade = shade_diffuse({g[0], g[1], g[2]}, light_);
        } else {
            out.valid = field_.eval(p, buf_);
            if (buf_.size() == 1) {
                out.value = buf_[0];
            } else {
                double sq = 0.0;
                for (double c : buf_) sq += c * c;
                out.value = std::sqrt(sq);
            }
        }
        if (!out.valid) ++stats_.lookup_misses;
        return out;
    }

    void composite_segment(const Sample& a, const Sample& b, double ds, CompositeState& st) const {
        if (!a.valid || !b.valid) return;
        const int k = s_.supersamples;
        const double sub = ds / k;
        for (int j = 0; j < k && st.alpha < s_.threshold; ++j) {
            const double w = (j + 0.5) / k;
            const TfSample c = tf_(a.value + (b.value - a.value) * w);
            const double shade = a.shade + (b.shade - a.shade) * w;
            composite_step(st, c.color * shade, c.alpha, sub, xi_);
        }
    }

    const accel::FieldEvaluator& field_;
    const TransferFunction& tf_;
    const RenderSettings& s_;
    const Ray& ray_;
    RayStats& stats_;
    double xi_;
    Vec3 light_;
    bool lit_ = false;
    std::vector<double> buf_;
    double finest_ = 0.0;
    double uniform_ = 0.0;
};

}  // namespace

const char* to_string(SamplingMode mode) { return mode == SamplingMode::Uniform ? "uniform" : "adaptive"; }

SamplingMode sampling_mode_from_string(const std::string& name) {
    if (name == "uniform") return SamplingMode::Uniform;
    if (name == "adaptive") return SamplingMode::Adaptive;
    throw ValidationError("unknown sampling mode '" + name + "'");
}

void RenderSettings::validate() const {
    if (!(xi >= 0.0) || !std::isfinite(xi)) throw ValidationError("settings: xi must be positive");
    if (supersamples < 1 || supersamples > 1024) throw ValidationError("settings: supersamples must lie in [1, 1024]");
    if (!(threshold > 0.0 && threshold <= 1.0)) throw ValidationError("settings: threshold must lie in (0, 1]");
    if (!(base_step_scale > 0.0) || !std::isfinite(base_step_scale))
        throw ValidationError("settings: base_step_scale must be positive");
    if (!(step >= 0.0) || !std::isfinite(step)) throw ValidationError("settings: step must be non-negative");
    for (int c = 0; c < 3; ++c) {
        if (!(background[c] >= 0.0 && background[c] <= 1.0)) throw ValidationError("settings: background must lie in [0, 1]");
        if (!std::isfinite(light_dir[c])) throw ValidationError("settings: light_dir must be finite");
    }
}

RayResult march_ray(const Ray& ray, const accel::FieldEvaluator& field, const TransferFunction& tf,
                    const RenderSettings& settings, const TrimMesh* trim, RayStats& stats) {
    RayResult r;
    const auto box = intersect_box(ray, field.domain());
    if (box) {
        std::vector<Interval> intervals{*box};
        if (trim) {
            const TrimResult tr = trim_intervals(ray, *trim, settings.trim_mode);
            if (tr.unpaired_hit) ++stats.unpaired_trim;
            intervals = intersect_intervals(tr.intervals, intervals);
        }
        Marcher m(field, tf, settings, ray, stats);
        for (const Interval& iv : intervals) {
            if (r.state.alpha >= settings.threshold) break;
            m.run(iv, r.state);
        }
    }
    r.color = r.state.color + settings.background * (1.0 - r.state.alpha);
    return r;
}

RenderResult render(const accel::FieldEvaluator& field, const Camera& camera, const TransferFunction& tf,
                    const RenderSettings& settings, const TrimMesh* trim, unsigned workers) {
    camera.validate();
    settings.validate();
    RenderResult out;
    out.image = Image(camera.width, camera.height);
    std::vector<RayStats> rows(static_cast<std::size_t>(camera.height));
    parallel_for(rows.size(), workers, [&](std::size_t y) {
        for (int x = 0; x < camera.width; ++x) {
            const RayResult r = march_ray(camera.ray(x, static_cast<double>(y)), field, tf, settings, trim, rows[y]);
            std::uint8_t* px = out.image.pixel(x, static_cast<int>(y));
            for (int c = 0; c < 3; ++c) px[c] = to_byte(r.color[c]);
            px[3] = 255;
        }
    });
    for (const RayStats& s : rows) out.stats += s;
    return out;
}

}  // namespace lrvis::volren
