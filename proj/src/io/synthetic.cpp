// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/io/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "lrvis/core/error.hpp"
#include "lrvis/io/refine.hpp"

namespace lrvis::io {
namespace {

double box_distance(const Box3& b, const Vec3& p) { return norm(b.clamp(p) - p); }

double max_side(const Box3& b) {
    const Vec3 e = b.extent();
    return std::max({e[0], e[1], e[2]});
}

std::vector<double> uniform_breaks(double lo, double hi, int cells) {
    std::vector<double> b(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i) b[i] = lo + (hi - lo) * (static_cast<double>(i) / cells);
    b.back() = hi;
    return b;
}

std::vector<double> thirds_and_sevenths(double lo, double hi) {
    std::set<double> u;
    for (int i = 0; i <= 3; ++i) u.insert(static_cast<double>(i) / 3.0);
    for (int i = 0; i <= 7; ++i) u.insert(static_cast<double>(i) / 7.0);
    std::vector<double> b;
    for (double x : u) b.push_back(lo + (hi - lo) * x);
    b.front() = lo;
    b.back() = hi;
    return b;
}

// Rounds of local refinement: each round refines every B-spline supporting an
// element near the focus that is coarser than the round's target side.
void refine_near(LRRefiner& r, const Vec3& focus, double radius, int levels) {
    double coarse = std::numeric_limits<double>::infinity();
    for (const Box3& e : r.elements()) coarse = std::min(coarse, max_side(e));
    for (int level = 1; level <= levels; ++level) {
        const double target = coarse * std::ldexp(1.0, -level);
        const double reach = radius * 2.0 * target;
        for (int pass = 0;; ++pass) {
            std::set<std::size_t> ids;
            for (const Box3& e : r.elements()) {
                if (max_side(e) <= target * (1.0 + 1e-9) || box_distance(e, focus) > reach) continue;
                for (std::size_t f : r.supporting(e)) ids.insert(f);
            }
            if (ids.empty()) break;
            if (pass > 8) throw Error("synthetic refinement did not converge");
            r.refine_bsplines({ids.begin(), ids.end()});
        }
    }
}

}  // namespace

const char* to_string(SyntheticKind kind) {
    switch (kind) {
        case SyntheticKind::Uniform: return "uniform";
        case SyntheticKind::DyadicMultiscale: return "dyadic-multiscale";
        case SyntheticKind::NonDyadic: return "non-dyadic";
    }
    return "?";
}

SyntheticKind synthetic_kind_from_string(const std::string& name) {
    for (auto k : {SyntheticKind::Uniform, SyntheticKind::DyadicMultiscale, SyntheticKind::NonDyadic})
        if (name == to_string(k)) return k;
    throw ValidationError("unknown synthetic kind '" + name + "'");
}

lr::LRSplineVolume generate_synthetic(const SyntheticSpec& spec) {
    if (spec.levels < 0) throw Error("synthetic levels must be non-negative");
    for (int a = 0; a < 3; ++a) {
        if (spec.degrees[a] < 0 || spec.degrees[a] > lr::kMaxSupportedDegree)
            throw Error("synthetic degree out of range");
        if (!(spec.domain.lo[a] < spec.domain.hi[a])) throw Error("synthetic domain is empty");
    }
    const int range_dim = spec.field.range_dim();
    if (range_dim < 1) throw Error("analytic field has no components");

    std::array<std::vector<double>, 3> breaks;
    const int base = spec.base_cells > 0 ? spec.base_cells : (spec.kind == SyntheticKind::Uniform ? 1 : 8);
    for (int a = 0; a < 3; ++a) {
        switch (spec.kind) {
            case SyntheticKind::Uniform:
                if (spec.levels > 12) throw Error("uniform synthetic level too large");
                breaks[a] = uniform_breaks(spec.domain.lo[a], spec.domain.hi[a], base << spec.levels);
                break;
            case SyntheticKind::DyadicMultiscale:
                breaks[a] = uniform_breaks(spec.domain.lo[a], spec.domain.hi[a], base);
                break;
            case SyntheticKind::NonDyadic:
                breaks[a] = thirds_and_sevenths(spec.domain.lo[a], spec.domain.hi[a]);
                break;
        }
    }
    // Coefficients of the coordinate functions: Greville points on the tensor
    // grid, carried through refinement. Sampling the field there reproduces
    // affine fields exactly on the refined mesh as well.
    lr::LRSplineVolume vol = tensor_volume(spec.degrees, breaks, 3);
    for (auto& f : vol.bsplines) f.coef = {greville(f.knots[0]), greville(f.knots[1]), greville(f.knots[2])};

    if (spec.kind != SyntheticKind::Uniform && spec.levels > 0) {
        LRRefiner refiner(vol);
        refine_near(refiner, spec.focus.value_or(spec.field.center), spec.focus_radius, spec.levels);
        vol = refiner.volume();
    }

    vol.range_dim = range_dim;
    for (auto& f : vol.bsplines) {
        const Vec3 g{f.coef[0], f.coef[1], f.coef[2]};
        f.coef.assign(static_cast<std::size_t>(range_dim), 0.0);
        spec.field.eval(g, f.coef);
    }
    return vol;
}

}  // namespace lrvis::io
