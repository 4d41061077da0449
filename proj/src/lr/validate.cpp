// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/lr/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lrvis/lr/bspline.hpp"

namespace lrvis::lr {
namespace {

constexpr std::size_t kMaxReportedOverlaps = 1000;

bool finite(const Vec3& v) { return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]); }

void check_bsplines(const LRSplineVolume& vol, std::vector<Issue>& out) {
    for (std::size_t i = 0; i < vol.bsplines.size(); ++i) {
        const LRBSpline& b = vol.bsplines[i];
        for (int a = 0; a < 3; ++a) {
            const auto& k = b.knots[a];
            const std::size_t expected = static_cast<std::size_t>(std::max(vol.degrees[a], 0)) + 2;
            if (k.size() != expected) {
                out.push_back({IssueKind::BadKnots,
                               "B-spline " + std::to_string(i) + " axis " + std::to_string(a) + " has " +
                                   std::to_string(k.size()) + " knots, expected " + std::to_string(expected),
                               {i}});
                continue;
            }
            const bool sorted = std::is_sorted(k.begin(), k.end());
            const bool all_finite = std::all_of(k.begin(), k.end(), [](double x) { return std::isfinite(x); });
            if (!sorted || !all_finite || !(k.front() < k.back()))
                out.push_back({IssueKind::BadKnots,
                               "B-spline " + std::to_string(i) + " axis " + std::to_string(a) +
                                   " knots are not non-decreasing with first < last",
                               {i}});
        }
        if (!(b.gamma > 0.0) || !std::isfinite(b.gamma))
            out.push_back({IssueKind::BadGamma, "B-spline " + std::to_string(i) + " has non-positive gamma", {i}, b.gamma});
        if (b.coef.size() != static_cast<std::size_t>(vol.range_dim) ||
            !std::all_of(b.coef.begin(), b.coef.end(), [](double x) { return std::isfinite(x); }))
            out.push_back({IssueKind::BadCoefficient,
                           "B-spline " + std::to_string(i) + " coefficient has wrong length or non-finite entries",
                           {i}});
    }
}

void check_overlaps(const LRSplineVolume& vol, std::vector<Issue>& out) {
    const auto& els = vol.elements;
    std::vector<std::size_t> order(els.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return els[a].box.lo[0] < els[b].box.lo[0]; });
    std::vector<std::size_t> active;
    std::size_t reported = 0;
    for (std::size_t idx : order) {
        const Box3& box = els[idx].box;
        std::erase_if(active, [&](std::size_t j) { return els[j].box.hi[0] <= box.lo[0]; });
        for (std::size_t j : active) {
            if (!els[j].box.overlaps(box)) continue;
            if (reported++ < kMaxReportedOverlaps) {
                const auto lo = std::min(j, idx), hi = std::max(j, idx);
                out.push_back({IssueKind::Overlap,
                               "elements " + std::to_string(lo) + " and " + std::to_string(hi) + " share interior volume",
                               {lo, hi}});
            }
        }
        active.push_back(idx);
    }
}

}  // namespace

const char* to_string(IssueKind kind) {
    switch (kind) {
        case IssueKind::BadDegree: return "bad-degree";
        case IssueKind::BadRangeDim: return "bad-range-dim";
        case IssueKind::BadDomain: return "bad-domain";
        case IssueKind::BadKnots: return "bad-knots";
        case IssueKind::BadGamma: return "bad-gamma";
        case IssueKind::BadCoefficient: return "bad-coefficient";
        case IssueKind::NoElements: return "no-elements";
        case IssueKind::DegenerateElement: return "degenerate-element";
        case IssueKind::ElementOutsideDomain: return "element-outside-domain";
        case IssueKind::Overlap: return "overlap";
        case IssueKind::CoverageGap: return "coverage-gap";
        case IssueKind::EmptySupport: return "empty-support";
        case IssueKind::SupportMismatch: return "support-mismatch";
        case IssueKind::PartitionOfUnity: return "partition-of-unity";
    }
    return "unknown";
}

bool ValidationReport::has(IssueKind kind) const {
    return std::any_of(issues.begin(), issues.end(), [&](const Issue& i) { return i.kind == kind; });
}

std::string ValidationReport::summary() const {
    if (issues.empty()) return "OK";
    std::ostringstream os;
    os << issues.size() << " issue(s)";
    for (const auto& i : issues) os << "\n  [" << to_string(i.kind) << "] " << i.message;
    return os.str();
}

ValidationReport validate(const LRSplineVolume& vol) {
    ValidationReport report;
    auto& out = report.issues;

    for (int a = 0; a < 3; ++a)
        if (vol.degrees[a] < 0 || vol.degrees[a] > kMaxSupportedDegree)
            out.push_back({IssueKind::BadDegree, "degree on axis " + std::to_string(a) + " outside [0, 10]", {}});
    if (vol.range_dim < 1) out.push_back({IssueKind::BadRangeDim, "range_dim must be >= 1", {}});
    if (!finite(vol.domain.lo) || !finite(vol.domain.hi) || !(vol.domain.lo[0] < vol.domain.hi[0]) ||
        !(vol.domain.lo[1] < vol.domain.hi[1]) || !(vol.domain.lo[2] < vol.domain.hi[2]))
        out.push_back({IssueKind::BadDomain, "domain must have positive extent on every axis", {}});
    // Later checks index knot vectors and degrees; bail out on broken headers.
    if (!out.empty()) return report;

    check_bsplines(vol, out);
    if (!out.empty()) return report;

    if (vol.elements.empty()) {
        out.push_back({IssueKind::NoElements, "volume has no elements", {}});
        return report;
    }

    bool geometry_ok = true;
    double total = 0.0;
    for (std::size_t e = 0; e < vol.elements.size(); ++e) {
        const Box3& box = vol.elements[e].box;
        if (!finite(box.lo) || !finite(box.hi) || !(box.lo[0] < box.hi[0]) || !(box.lo[1] < box.hi[1]) ||
            !(box.lo[2] < box.hi[2])) {
            out.push_back({IssueKind::DegenerateElement, "element " + std::to_string(e) + " has zero or negative extent", {e}});
            geometry_ok = false;
            continue;
        }
        if (!vol.domain.contains(box)) {
            out.push_back({IssueKind::ElementOutsideDomain, "element " + std::to_string(e) + " leaves the domain", {e}});
            geometry_ok = false;
        }
        total += box.volume();
    }
    if (!geometry_ok) return report;

    const std::size_t before_overlap = out.size();
    check_overlaps(vol, out);
    const double domain_volume = vol.domain.volume();
    if (out.size() == before_overlap && std::abs(total - domain_volume) > 1e-12 * domain_volume)
        out.push_back({IssueKind::CoverageGap, "elements do not cover the domain", {}, domain_volume - total});

    const auto supports = compute_supports(vol);
    for (std::size_t e = 0; e < vol.elements.size(); ++e) {
        const auto& s = supports[e];
        if (s.empty()) {
            out.push_back({IssueKind::EmptySupport, "element " + std::to_string(e) + " lies in no B-spline support", {e}});
            continue;
        }
        const auto& stored = vol.elements[e].supports;
        if (!stored.empty() && stored != s)
            out.push_back({IssueKind::SupportMismatch, "element " + std::to_string(e) + " has a stale support list", {e}});

        const Box3& box = vol.elements[e].box;
        const Vec3 c = box.center();
        double sum = 0.0;
        for (std::uint32_t i : s) {
            const LRBSpline& b = vol.bsplines[i];
            double w = b.gamma;
            for (int a = 0; a < 3; ++a) w *= eval_bspline_piece(b.knots[a], vol.degrees[a], c[a], c[a]);
            sum += w;
        }
        const double residual = std::abs(sum - 1.0);
        report.max_pou_residual = std::max(report.max_pou_residual, residual);
        if (residual > kPartitionOfUnityTolerance)
            out.push_back({IssueKind::PartitionOfUnity,
                           "element " + std::to_string(e) + " violates partition of unity at its center", {e}, residual});
    }
    return report;
}

}  // namespace lrvis::lr
