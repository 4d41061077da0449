// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/lr/volume.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrvis/core/error.hpp"
#include "lrvis/lr/bspline.hpp"

namespace lrvis::lr {
namespace {

// Uniform bucket grid over the domain; each bucket lists the B-splines whose
// (closed) support touches it.
class SupportBuckets {
public:
    explicit SupportBuckets(const LRSplineVolume& vol) : vol_(vol) {
        const double n = static_cast<double>(std::max<std::size_t>(vol.bsplines.size(), 1));
        res_ = std::clamp(static_cast<int>(std::cbrt(n)), 1, 64);
        buckets_.resize(static_cast<std::size_t>(res_) * res_ * res_);
        for (std::uint32_t i = 0; i < vol.bsplines.size(); ++i) {
            const Box3 s = vol.bsplines[i].support();
            const auto lo = cell(s.lo);
            const auto hi = cell(s.hi);
            for (int k = lo[2]; k <= hi[2]; ++k)
                for (int j = lo[1]; j <= hi[1]; ++j)
                    for (int c = lo[0]; c <= hi[0]; ++c) buckets_[index(c, j, k)].push_back(i);
        }
    }

    std::vector<std::uint32_t> query(const Box3& box) const {
        const auto c = cell(box.center());
        std::vector<std::uint32_t> out;
        for (std::uint32_t i : buckets_[index(c[0], c[1], c[2])])
            if (vol_.bsplines[i].support().contains(box)) out.push_back(i);
        return out;  // buckets are filled in ascending order
    }

private:
    std::array<int, 3> cell(const Vec3& p) const {
        std::array<int, 3> c{};
        const Vec3 ext = vol_.domain.extent();
        for (int a = 0; a < 3; ++a) {
            const double u = ext[a] > 0 ? (p[a] - vol_.domain.lo[a]) / ext[a] : 0.0;
            c[a] = std::clamp(static_cast<int>(std::floor(u * res_)), 0, res_ - 1);
        }
        return c;
    }
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) + static_cast<std::size_t>(res_) * (j + static_cast<std::size_t>(res_) * k);
    }

    const LRSplineVolume& vol_;
    int res_ = 1;
    std::vector<std::vector<std::uint32_t>> buckets_;
};

}  // namespace

std::vector<std::uint32_t> supporting_bsplines(const LRSplineVolume& vol, const Box3& box) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < vol.bsplines.size(); ++i)
        if (vol.bsplines[i].support().contains(box)) out.push_back(i);
    return out;
}

std::vector<std::vector<std::uint32_t>> compute_supports(const LRSplineVolume& vol) {
    const SupportBuckets buckets(vol);
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(vol.elements.size());
    for (const auto& e : vol.elements) out.push_back(buckets.query(e.box));
    return out;
}

LRSplineVolume bind_supports(LRSplineVolume vol) {
    auto supports = compute_supports(vol);
    for (std::size_t e = 0; e < vol.elements.size(); ++e) {
        if (supports[e].empty())
            throw ValidationError("element " + std::to_string(e) + " is not contained in any B-spline support");
        vol.elements[e].supports = std::move(supports[e]);
    }
    return vol;
}

std::vector<Element> derive_elements(const LRSplineVolume& vol) {
    std::array<std::vector<double>, 3> cuts;
    for (int a = 0; a < 3; ++a) {
        auto& c = cuts[a];
        c.push_back(vol.domain.lo[a]);
        c.push_back(vol.domain.hi[a]);
        for (const auto& b : vol.bsplines)
            for (double k : b.knots[a])
                if (k > vol.domain.lo[a] && k < vol.domain.hi[a]) c.push_back(k);
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::vector<Element> out;
    out.reserve((cuts[0].size() - 1) * (cuts[1].size() - 1) * (cuts[2].size() - 1));
    for (std::size_t k = 0; k + 1 < cuts[2].size(); ++k)
        for (std::size_t j = 0; j + 1 < cuts[1].size(); ++j)
            for (std::size_t i = 0; i + 1 < cuts[0].size(); ++i)
                out.push_back({{{cuts[0][i], cuts[1][j], cuts[2][k]}, {cuts[0][i + 1], cuts[1][j + 1], cuts[2][k + 1]}}, {}});
    return out;
}

void eval_lr(const LRSplineVolume& vol, std::size_t element, const Vec3& p, std::span<double> out) {
    if (element >= vol.elements.size())
        throw ValidationError("element index " + std::to_string(element) + " out of range");
    const Element& e = vol.elements[element];
    const Vec3 mid = e.box.center();
    std::fill(out.begin(), out.end(), 0.0);
    for (std::uint32_t i : e.supports) {
        const LRBSpline& b = vol.bsplines[i];
        double w = b.gamma;
        for (int a = 0; a < 3 && w != 0.0; ++a) w *= eval_bspline_piece(b.knots[a], vol.degrees[a], p[a], mid[a]);
        if (w == 0.0) continue;
        for (std::size_t c = 0; c < out.size(); ++c) out[c] += w * b.coef[c];
    }
}

std::vector<double> eval_lr(const LRSplineVolume& vol, std::size_t element, const Vec3& p) {
    std::vector<double> out(static_cast<std::size_t>(vol.range_dim));
    eval_lr(vol, element, p, out);
    return out;
}

double basis_sum(const LRSplineVolume& vol, std::size_t element, const Vec3& p) {
    const Element& e = vol.elements.at(element);
    const Vec3 mid = e.box.center();
    double sum = 0.0;
    for (std::uint32_t i : e.supports) {
        const LRBSpline& b = vol.bsplines[i];
        double w = b.gamma;
        for (int a = 0; a < 3; ++a) w *= eval_bspline_piece(b.knots[a], vol.degrees[a], p[a], mid[a]);
        sum += w;
    }
    return sum;
}

double local_step(const Box3& box, const TriDegree& degrees) {
    return std::ldexp(box.min_side(), -degrees.max());
}

double min_element_side(const LRSplineVolume& vol) {
    double m = vol.domain.min_side();
    for (const auto& e : vol.elements) m = std::min(m, e.box.min_side());
    return m;
}

}  // namespace lrvis::lr
