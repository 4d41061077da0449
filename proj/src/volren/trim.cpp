// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/volren/trim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lrvis/core/error.hpp"

namespace lrvis::volren {
namespace {

constexpr std::uint32_t kLeafSize = 4;

Box3 triangle_box(const Triangle& t) {
    return {cwise_min(t.v[0], cwise_min(t.v[1], t.v[2])), cwise_max(t.v[0], cwise_max(t.v[1], t.v[2]))};
}

bool hits_box(const Ray& ray, const Box3& b, double t_max) {
    double t0 = 0.0, t1 = t_max;
    for (int a = 0; a < 3; ++a) {
        const double inv = 1.0 / ray.dir[a];
        double ta = (b.lo[a] - ray.origin[a]) * inv;
        double tb = (b.hi[a] - ray.origin[a]) * inv;
        if (std::isnan(ta) || std::isnan(tb)) {
            // Zero direction component with the origin on a slab face.
            if (ray.origin[a] < b.lo[a] || ray.origin[a] > b.hi[a]) return false;
            continue;
        }
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1) return false;
    }
    return true;
}

void sort_and_merge(std::vector<TrimHit>& hits) {
    std::sort(hits.begin(), hits.end(), [](const TrimHit& a, const TrimHit& b) {
        return a.t != b.t ? a.t < b.t : a.front > b.front;
    });
    std::vector<TrimHit> out;
    for (const TrimHit& h : hits) {
        const bool dup = std::any_of(out.rbegin(), out.rend(), [&](const TrimHit& o) {
            return o.front == h.front && std::abs(o.t - h.t) <= 1e-9 * std::max(1.0, std::abs(h.t));
        });
        if (!dup) out.push_back(h);
    }
    hits = std::move(out);
}

}  // namespace

bool intersect_triangle(const Ray& ray, const Triangle& tri, double& t, bool& front) {
    const Vec3 e1 = tri.v[1] - tri.v[0];
    const Vec3 e2 = tri.v[2] - tri.v[0];
    const Vec3 pv = cross(ray.dir, e2);
    const double det = dot(e1, pv);
    const double scale = norm(e1) * norm(e2);
    if (std::abs(det) <= 1e-14 * scale) return false;  // parallel to the plane
    const double inv = 1.0 / det;
    const Vec3 tv = ray.origin - tri.v[0];
    const double u = dot(tv, pv) * inv;
    if (u < 0.0 || u > 1.0) return false;
    const Vec3 qv = cross(tv, e1);
    const double v = dot(ray.dir, qv) * inv;
    if (v < 0.0 || u + v > 1.0) return false;
    t = dot(e2, qv) * inv;
    if (t < 0.0) return false;
    front = det > 0.0;  // counter-clockwise seen from the ray: outward normal faces the ray
    return true;
}

TrimMesh::TrimMesh(TriangleMesh mesh) : mesh_(std::move(mesh)) {
    for (std::size_t i = 0; i < mesh_.triangles.size(); ++i)
        for (const Vec3& v : mesh_.triangles[i].v)
            if (!std::isfinite(v[0]) || !std::isfinite(v[1]) || !std::isfinite(v[2]))
                throw ValidationError("trim mesh triangle " + std::to_string(i) + " has a non-finite vertex");
    if (!mesh_.triangles.empty()) build(0, static_cast<std::uint32_t>(mesh_.triangles.size()));
}

std::uint32_t TrimMesh::build(std::uint32_t first, std::uint32_t count) {
    const std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({});
    Box3 box = triangle_box(mesh_.triangles[first]);
    Box3 centers{box.center(), box.center()};
    for (std::uint32_t i = first; i < first + count; ++i) {
        const Box3 b = triangle_box(mesh_.triangles[i]);
        box = {cwise_min(box.lo, b.lo), cwise_max(box.hi, b.hi)};
        centers = {cwise_min(centers.lo, b.center()), cwise_max(centers.hi, b.center())};
    }
    nodes_[id].box = box;
    const Vec3 spread = centers.extent();
    if (count <= kLeafSize || std::max({spread[0], spread[1], spread[2]}) == 0.0) {
        nodes_[id].first = first;
        nodes_[id].count = count;
        return id;
    }
    const int axis = spread[0] >= spread[1] && spread[0] >= spread[2] ? 0 : (spread[1] >= spread[2] ? 1 : 2);
    const auto begin = mesh_.triangles.begin() + first;
    std::nth_element(begin, begin + count / 2, begin + count, [axis](const Triangle& a, const Triangle& b) {
        return triangle_box(a).center()[axis] < triangle_box(b).center()[axis];
    });
    build(first, count / 2);  // left child follows its parent
    nodes_[id].first = build(first + count / 2, count - count / 2);
    return id;
}

std::vector<TrimHit> TrimMesh::hits(const Ray& ray) const {
    std::vector<TrimHit> out;
    if (nodes_.empty()) return out;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty()) {
        const Node& n = nodes_[stack.back()];
        const std::uint32_t id = stack.back();
        stack.pop_back();
        if (!hits_box(ray, n.box, inf)) continue;
        if (n.count == 0) {
            stack.push_back(n.first);
            stack.push_back(id + 1);
            continue;
        }
        for (std::uint32_t i = n.first; i < n.first + n.count; ++i) {
            TrimHit h;
            if (intersect_triangle(ray, mesh_.triangles[i], h.t, h.front)) out.push_back(h);
        }
    }
    sort_and_merge(out);
    return out;
}

std::vector<TrimHit> TrimMesh::hits_brute_force(const Ray& ray) const {
    std::vector<TrimHit> out;
    for (const Triangle& tri : mesh_.triangles) {
        TrimHit h;
        if (intersect_triangle(ray, tri, h.t, h.front)) out.push_back(h);
    }
    sort_and_merge(out);
    return out;
}

TrimResult pair_hits(const std::vector<TrimHit>& hits, TrimMode mode) {
    TrimResult r;
    if (mode == TrimMode::Single) {
        const auto first_front = std::find_if(hits.begin(), hits.end(), [](const TrimHit& h) { return h.front; });
        const auto last_back = std::find_if(hits.rbegin(), hits.rend(), [](const TrimHit& h) { return !h.front; });
        r.unpaired_hit = hits.size() % 2 == 1;
        if (first_front != hits.end() && last_back != hits.rend() && first_front->t < last_back->t)
            r.intervals.push_back({first_front->t, last_back->t});
        return r;
    }
    bool inside = false;
    double enter = 0.0;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        const TrimHit& h = hits[i];
        if (h.front && !inside) {
            inside = true;
            enter = h.t;
        } else if (!h.front && inside) {
            if (h.t > enter) r.intervals.push_back({enter, h.t});
            inside = false;
        } else if (!h.front && i == 0) {
            // The ray starts inside the mesh.
            if (h.t > 0.0) r.intervals.push_back({0.0, h.t});
        } else {
            r.unpaired_hit = true;
        }
    }
    if (inside) r.unpaired_hit = true;
    return r;
}

TrimResult trim_intervals(const Ray& ray, const TrimMesh& mesh, TrimMode mode) { return pair_hits(mesh.hits(ray), mode); }

std::vector<Interval> intersect_intervals(const std::vector<Interval>& a, const std::vector<Interval>& b) {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double lo = std::max(a[i].first, b[j].first);
        const double hi = std::min(a[i].second, b[j].second);
        if (lo < hi) out.push_back({lo, hi});
        if (a[i].second < b[j].second)
            ++i;
        else
            ++j;
    }
    return out;
}

}  // namespace lrvis::volren
