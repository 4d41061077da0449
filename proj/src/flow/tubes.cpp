// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/flow/tubes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lrvis/core/error.hpp"
#include "lrvis/core/parallel.hpp"
#include "lrvis/volren/composite.hpp"

namespace lrvis::flow {

std::optional<double> intersect_capsule(const volren::Ray& ray, const Vec3& a, const Vec3& b, double radius) {
    const Vec3 ba = b - a;
    const Vec3 oa = ray.origin - a;
    const double baba = dot(ba, ba);
    const double bard = dot(ba, ray.dir);
    const double baoa = dot(ba, oa);
    const double rdoa = dot(ray.dir, oa);
    const double oaoa = dot(oa, oa);
    const double r2 = radius * radius;

    double best = std::numeric_limits<double>::infinity();
    const double qa = baba - bard * bard;
    if (qa > 1e-14 * baba) {
        const double qb = baba * rdoa - baoa * bard;
        const double qc = baba * oaoa - baoa * baoa - r2 * baba;
        const double disc = qb * qb - qa * qc;
        if (disc >= 0.0) {
            const double t = (-qb - std::sqrt(disc)) / qa;
            const double y = baoa + t * bard;
            if (t > 0.0 && y > 0.0 && y < baba) return t;
        }
    }
    // End caps.
    for (const Vec3* c : {&a, &b}) {
        const Vec3 oc = ray.origin - *c;
        const double hb = dot(ray.dir, oc);
        const double hc = dot(oc, oc) - r2;
        const double disc = hb * hb - hc;
        if (disc < 0.0) continue;
        const double t = -hb - std::sqrt(disc);
        if (t > 0.0) best = std::min(best, t);
    }
    if (std::isfinite(best)) return best;
    return std::nullopt;
}

Vec3 speed_color(double s) {
    s = std::clamp(s, 0.0, 1.0);
    return {s, 0.0, 1.0 - s};
}

namespace {

struct Segment {
    Vec3 a, b;
    double speed_a = 0.0, speed_b = 0.0;
};

struct Node {
    Box3 box;
    std::uint32_t first = 0;  // leaf: first segment; inner: right child
    std::uint32_t count = 0;  // 0 for inner nodes
};

class SegmentBvh {
public:
    SegmentBvh(std::vector<Segment> segs, double radius) : segs_(std::move(segs)), radius_(radius) {
        if (!segs_.empty()) build(0, static_cast<std::uint32_t>(segs_.size()));
    }

    struct Hit {
        double t = std::numeric_limits<double>::infinity();
        std::uint32_t seg = 0;
    };

    Hit trace(const volren::Ray& ray) const {
        Hit hit;
        if (nodes_.empty()) return hit;
        std::vector<std::uint32_t> stack{0};
        while (!stack.empty()) {
            const std::uint32_t n = stack.back();
            stack.pop_back();
            const Node& node = nodes_[n];
            const auto span = volren::intersect_box(ray, node.box);
            if (!span || span->first > hit.t) continue;
            if (node.count > 0) {
                for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
                    const auto t = intersect_capsule(ray, segs_[i].a, segs_[i].b, radius_);
                    if (t && *t < hit.t) hit = {*t, i};
                }
            } else {
                stack.push_back(node.first);
                stack.push_back(n + 1);
            }
        }
        return hit;
    }

    const Segment& segment(std::uint32_t i) const { return segs_[i]; }

private:
    Box3 bounds(std::uint32_t lo, std::uint32_t hi) const {
        Box3 b{Vec3(1, 1, 1) * std::numeric_limits<double>::infinity(), Vec3(1, 1, 1) * -std::numeric_limits<double>::infinity()};
        const Vec3 r(radius_, radius_, radius_);
        for (std::uint32_t i = lo; i < hi; ++i) {
            b.lo = cwise_min(b.lo, cwise_min(segs_[i].a, segs_[i].b) - r);
            b.hi = cwise_max(b.hi, cwise_max(segs_[i].a, segs_[i].b) + r);
        }
        return b;
    }

    std::uint32_t build(std::uint32_t lo, std::uint32_t hi) {
        const auto idx = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back({bounds(lo, hi), lo, hi - lo});
        if (hi - lo <= 4) return idx;
        const Vec3 e = nodes_[idx].box.extent();
        const int axis = e[0] >= e[1] && e[0] >= e[2] ? 0 : (e[1] >= e[2] ? 1 : 2);
        const std::uint32_t mid = lo + (hi - lo) / 2;
        std::nth_element(segs_.begin() + lo, segs_.begin() + mid, segs_.begin() + hi, [axis](const Segment& p, const Segment& q) {
            return p.a[axis] + p.b[axis] < q.a[axis] + q.b[axis];
        });
        nodes_[idx].count = 0;
        build(lo, mid);
        nodes_[idx].first = build(mid, hi);
        return idx;
    }

    std::vector<Segment> segs_;
    std::vector<Node> nodes_;
    double radius_;
};

double speed(const VectorField& field, const Vec3& p) {
    Vec3 v;
    if (!field.eval(field.domain().clamp(p), v)) return 0.0;
    return norm(v);
}

}  // namespace

Image render_streamlines(const std::vector<Streamline>& lines, const VectorField& field, const volren::Camera& camera,
                         const TubeSettings& settings) {
    camera.validate();
    if (!(settings.radius > 0.0)) throw ValidationError("tube radius must be positive");

    std::vector<Segment> segs;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Streamline& line : lines) {
        std::vector<double> sp;
        sp.reserve(line.samples.size());
        for (const Sample& s : line.samples) {
            sp.push_back(speed(field, s.x));
            lo = std::min(lo, sp.back());
            hi = std::max(hi, sp.back());
        }
        for (std::size_t i = 0; i < line.samples.size(); ++i) {
            // A single-sample line is drawn as a sphere.
            const std::size_t j = line.samples.size() == 1 ? i : i + 1;
            if (j >= line.samples.size()) break;
            segs.push_back({line.samples[i].x, line.samples[j].x, sp[i], sp[j]});
        }
    }
    const double range = hi - lo;
    const SegmentBvh bvh(std::move(segs), settings.radius);

    Image img(camera.width, camera.height);
    parallel_for(static_cast<std::size_t>(camera.height), std::max(1u, settings.workers), [&](std::size_t row) {
        const int y = static_cast<int>(row);
        for (int x = 0; x < camera.width; ++x) {
            const volren::Ray ray = camera.ray(x, y);
            const auto hit = bvh.trace(ray);
            Vec3 c = settings.background;
            if (std::isfinite(hit.t)) {
                const Segment& s = bvh.segment(hit.seg);
                const Vec3 p = ray.at(hit.t);
                const Vec3 ba = s.b - s.a;
                const double baba = dot(ba, ba);
                const double u = baba > 0.0 ? std::clamp(dot(p - s.a, ba) / baba, 0.0, 1.0) : 0.0;
                const Vec3 normal = p - (s.a + ba * u);
                const double v = s.speed_a + (s.speed_b - s.speed_a) * u;
                const double norm_speed = range > 1e-12 * std::max(1.0, hi) ? (v - lo) / range : 0.5;
                c = speed_color(norm_speed) * volren::shade_diffuse(normal, -ray.dir);
            }
            std::uint8_t* px = img.pixel(x, y);
            px[0] = to_byte(c[0]);
            px[1] = to_byte(c[1]);
            px[2] = to_byte(c[2]);
            px[3] = 255;
        }
    });
    return img;
}

}  // namespace lrvis::flow
