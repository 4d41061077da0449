// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/io/refine.hpp"

#include <algorithm>
#include <set>

#include "lrvis/core/error.hpp"

namespace lrvis::io {
namespace {

// The two axes spanning a plane normal to `axis`.
constexpr std::array<int, 2> other_axes(int axis) { return {(axis + 1) % 3, (axis + 2) % 3}; }

}  // namespace

lr::LRSplineVolume tensor_volume(const lr::TriDegree& degrees, const std::array<std::vector<double>, 3>& breaks,
                                 int range_dim) {
    lr::LRSplineVolume vol;
    vol.degrees = degrees;
    vol.range_dim = range_dim;
    std::array<std::vector<double>, 3> open;
    for (int a = 0; a < 3; ++a) {
        const auto& b = breaks[a];
        if (b.size() < 2) throw Error("tensor volume needs at least two breakpoints per axis");
        vol.domain.lo[a] = b.front();
        vol.domain.hi[a] = b.back();
        open[a].assign(static_cast<std::size_t>(degrees[a]), b.front());
        open[a].insert(open[a].end(), b.begin(), b.end());
        open[a].insert(open[a].end(), static_cast<std::size_t>(degrees[a]), b.back());
    }
    std::array<std::size_t, 3> count{};
    for (int a = 0; a < 3; ++a) count[a] = breaks[a].size() - 1 + static_cast<std::size_t>(degrees[a]);
    for (std::size_t k = 0; k < count[2]; ++k)
        for (std::size_t j = 0; j < count[1]; ++j)
            for (std::size_t i = 0; i < count[0]; ++i) {
                lr::LRBSpline f;
                const std::array<std::size_t, 3> idx{i, j, k};
                for (int a = 0; a < 3; ++a)
                    f.knots[a].assign(open[a].begin() + static_cast<std::ptrdiff_t>(idx[a]),
                                      open[a].begin() + static_cast<std::ptrdiff_t>(idx[a]) + degrees[a] + 2);
                f.coef.assign(static_cast<std::size_t>(range_dim), 0.0);
                vol.bsplines.push_back(std::move(f));
            }
    for (std::size_t k = 0; k + 1 < breaks[2].size(); ++k)
        for (std::size_t j = 0; j + 1 < breaks[1].size(); ++j)
            for (std::size_t i = 0; i + 1 < breaks[0].size(); ++i)
                vol.elements.push_back({{{breaks[0][i], breaks[1][j], breaks[2][k]},
                                         {breaks[0][i + 1], breaks[1][j + 1], breaks[2][k + 1]}},
                                        {}});
    return lr::bind_supports(std::move(vol));
}

double greville(const std::vector<double>& knots) {
    const std::size_t p = knots.size() - 2;
    if (p == 0) return 0.5 * (knots[0] + knots[1]);
    double s = 0.0;
    for (std::size_t i = 1; i <= p; ++i) s += knots[i];
    return s / static_cast<double>(p);
}

LRRefiner::LRRefiner(const lr::LRSplineVolume& vol)
    : degrees_(vol.degrees), domain_(vol.domain), range_dim_(vol.range_dim) {
    for (const auto& b : vol.bsplines) add_or_merge(b.knots, b.coef, b.gamma);
    if (vol.elements.empty())
        for (const auto& e : lr::derive_elements(vol)) elements_.push_back(e.box);
    else
        for (const auto& e : vol.elements) elements_.push_back(e.box);
}

std::size_t LRRefiner::add_or_merge(std::array<std::vector<double>, 3> knots, const std::vector<double>& coef,
                                    double gamma) {
    auto it = index_.find(knots);
    if (it != index_.end()) {
        Fn& f = fns_[it->second];
        const double g = f.gamma + gamma;
        for (std::size_t c = 0; c < f.coef.size(); ++c) f.coef[c] = (f.gamma * f.coef[c] + gamma * coef[c]) / g;
        f.gamma = g;
        return it->second;
    }
    fns_.push_back({knots, coef, gamma, true});
    index_.emplace(std::move(knots), fns_.size() - 1);
    return fns_.size() - 1;
}

std::vector<std::size_t> LRRefiner::alive_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fns_.size(); ++i)
        if (fns_[i].alive) out.push_back(i);
    return out;
}

std::size_t LRRefiner::bspline_count() const { return alive_indices().size(); }

void LRRefiner::add_rect(int axis, double value, const Rect& r) { lines_[{axis, value}].push_back(r); }

void LRRefiner::insert(int axis, double value, const Box3& box) {
    const auto o = other_axes(axis);
    add_rect(axis, value, {{box.lo[o[0]], box.lo[o[1]]}, {box.hi[o[0]], box.hi[o[1]]}});
    resolve();
    split_elements();
}

void LRRefiner::refine_bsplines(const std::vector<std::size_t>& ids) {
    const auto alive = alive_indices();
    std::set<std::tuple<int, double, double, double, double, double>> seen;
    for (std::size_t id : ids) {
        const Fn& f = fns_.at(alive.at(id));
        Box3 s;
        for (int a = 0; a < 3; ++a) {
            s.lo[a] = f.knots[a].front();
            s.hi[a] = f.knots[a].back();
        }
        for (int a = 0; a < 3; ++a) {
            const auto o = other_axes(a);
            const auto& t = f.knots[a];
            for (std::size_t i = 0; i + 1 < t.size(); ++i) {
                if (!(t[i] < t[i + 1])) continue;
                const double v = 0.5 * (t[i] + t[i + 1]);
                if (seen.emplace(a, v, s.lo[o[0]], s.lo[o[1]], s.hi[o[0]], s.hi[o[1]]).second)
                    add_rect(a, v, {{s.lo[o[0]], s.lo[o[1]]}, {s.hi[o[0]], s.hi[o[1]]}});
            }
        }
    }
    resolve();
    split_elements();
}

bool LRRefiner::covered(const std::vector<Rect>& rects, const double lo[2], const double hi[2]) const {
    std::vector<const Rect*> hits;
    for (const Rect& r : rects) {
        if (r.lo[0] <= lo[0] && r.hi[0] >= hi[0] && r.lo[1] <= lo[1] && r.hi[1] >= hi[1]) return true;
        if (r.lo[0] < hi[0] && r.hi[0] > lo[0] && r.lo[1] < hi[1] && r.hi[1] > lo[1]) hits.push_back(&r);
    }
    if (hits.empty()) return false;
    // Rasterize on the breakpoints of the overlapping rectangles.
    std::array<std::vector<double>, 2> cuts;
    for (int d = 0; d < 2; ++d) {
        cuts[d] = {lo[d], hi[d]};
        for (const Rect* r : hits) {
            if (r->lo[d] > lo[d] && r->lo[d] < hi[d]) cuts[d].push_back(r->lo[d]);
            if (r->hi[d] > lo[d] && r->hi[d] < hi[d]) cuts[d].push_back(r->hi[d]);
        }
        std::sort(cuts[d].begin(), cuts[d].end());
        cuts[d].erase(std::unique(cuts[d].begin(), cuts[d].end()), cuts[d].end());
    }
    for (std::size_t i = 0; i + 1 < cuts[0].size(); ++i)
        for (std::size_t j = 0; j + 1 < cuts[1].size(); ++j) {
            const double x = 0.5 * (cuts[0][i] + cuts[0][i + 1]);
            const double y = 0.5 * (cuts[1][j] + cuts[1][j + 1]);
            bool in = false;
            for (const Rect* r : hits)
                if (r->lo[0] <= x && x <= r->hi[0] && r->lo[1] <= y && y <= r->hi[1]) {
                    in = true;
                    break;
                }
            if (!in) return false;
        }
    return true;
}

bool LRRefiner::try_split(std::size_t fi, std::vector<std::size_t>& queue) {
    for (int a = 0; a < 3; ++a) {
        const auto o = other_axes(a);
        const std::vector<double>& t = fns_[fi].knots[a];
        const double lo[2] = {fns_[fi].knots[o[0]].front(), fns_[fi].knots[o[1]].front()};
        const double hi[2] = {fns_[fi].knots[o[0]].back(), fns_[fi].knots[o[1]].back()};
        for (auto it = lines_.upper_bound({a, t.front()}); it != lines_.end(); ++it) {
            if (it->first.first != a || it->first.second >= t.back()) break;
            const double v = it->first.second;
            if (std::find(t.begin(), t.end(), v) != t.end()) continue;
            if (!covered(it->second, lo, hi)) continue;

            // Knot insertion: N[t] = a1 N[tau_0..p+1] + a2 N[tau_1..p+2].
            const int p = degrees_[a];
            const double a1 = v < t[p] ? (v - t[0]) / (t[p] - t[0]) : 1.0;
            const double a2 = v > t[1] ? (t[p + 1] - v) / (t[p + 1] - t[1]) : 1.0;
            std::vector<double> tau = t;
            tau.insert(std::upper_bound(tau.begin(), tau.end(), v), v);

            Fn old = fns_[fi];
            fns_[fi].alive = false;
            index_.erase(old.knots);
            auto k1 = old.knots, k2 = old.knots;
            k1[a].assign(tau.begin(), tau.end() - 1);
            k2[a].assign(tau.begin() + 1, tau.end());
            queue.push_back(add_or_merge(std::move(k1), old.coef, old.gamma * a1));
            queue.push_back(add_or_merge(std::move(k2), old.coef, old.gamma * a2));
            return true;
        }
    }
    return false;
}

void LRRefiner::resolve() {
    std::vector<std::size_t> queue = alive_indices();
    while (!queue.empty()) {
        const std::size_t f = queue.back();
        queue.pop_back();
        if (fns_[f].alive) try_split(f, queue);
    }
}

void LRRefiner::split_elements() {
    std::vector<Box3> work = std::move(elements_);
    elements_.clear();
    while (!work.empty()) {
        Box3 e = work.back();
        work.pop_back();
        bool split = false;
        for (int a = 0; a < 3 && !split; ++a) {
            const auto o = other_axes(a);
            for (auto it = lines_.upper_bound({a, e.lo[a]}); it != lines_.end(); ++it) {
                if (it->first.first != a || it->first.second >= e.hi[a]) break;
                const bool crosses = std::any_of(it->second.begin(), it->second.end(), [&](const Rect& r) {
                    return r.lo[0] < e.hi[o[0]] && r.hi[0] > e.lo[o[0]] && r.lo[1] < e.hi[o[1]] &&
                           r.hi[1] > e.lo[o[1]];
                });
                if (!crosses) continue;
                Box3 lower = e, upper = e;
                lower.hi[a] = it->first.second;
                upper.lo[a] = it->first.second;
                work.push_back(lower);
                work.push_back(upper);
                split = true;
                break;
            }
        }
        if (!split) elements_.push_back(e);
    }
    std::sort(elements_.begin(), elements_.end(), [](const Box3& x, const Box3& y) {
        for (int a = 2; a >= 0; --a)
            if (x.lo[a] != y.lo[a]) return x.lo[a] < y.lo[a];
        return false;
    });
}

lr::LRSplineVolume LRRefiner::volume() const {
    lr::LRSplineVolume vol;
    vol.degrees = degrees_;
    vol.domain = domain_;
    vol.range_dim = range_dim_;
    for (std::size_t i : alive_indices()) {
        const Fn& f = fns_[i];
        vol.bsplines.push_back({f.knots, f.coef, f.gamma});
    }
    for (const Box3& b : elements_) vol.elements.push_back({b, {}});
    return lr::bind_supports(std::move(vol));
}

std::vector<std::size_t> LRRefiner::supporting(const Box3& box) const {
    std::vector<std::size_t> out;
    std::size_t n = 0;
    for (const Fn& f : fns_) {
        if (!f.alive) continue;
        bool in = true;
        for (int a = 0; a < 3 && in; ++a) in = f.knots[a].front() <= box.lo[a] && box.hi[a] <= f.knots[a].back();
        if (in) out.push_back(n);
        ++n;
    }
    return out;
}

}  // namespace lrvis::io
