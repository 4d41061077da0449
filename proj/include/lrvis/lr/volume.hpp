// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lrvis/core/vec.hpp"

namespace lrvis::lr {

inline constexpr int kMaxSupportedDegree = 10;

/// Polynomial degree per parameter axis.
struct TriDegree {
    std::array<int, 3> p{};

    constexpr int operator[](std::size_t a) const { return p[a]; }
    constexpr int max() const { return std::max({p[0], p[1], p[2]}); }
    /// Number of tensor Bernstein coefficients per component.
    constexpr int control_count() const { return (p[0] + 1) * (p[1] + 1) * (p[2] + 1); }

    friend constexpr bool operator==(const TriDegree&, const TriDegree&) = default;
};

/// One LR B-spline: a tensor-product B-spline on three local knot vectors,
/// carrying its coefficient and partition-of-unity scaling factor.
struct LRBSpline {
    std::array<std::vector<double>, 3> knots;
    std::vector<double> coef;
    double gamma = 1.0;

    Box3 support() const {
        return {{knots[0].front(), knots[1].front(), knots[2].front()},
                {knots[0].back(), knots[1].back(), knots[2].back()}};
    }

    friend bool operator==(const LRBSpline&, const LRBSpline&) = default;
};

/// A box of the partition; `supports` lists the B-splines active on it.
struct Element {
    Box3 box;
    std::vector<std::uint32_t> supports;

    friend bool operator==(const Element&, const Element&) = default;
};

struct LRSplineVolume {
    TriDegree degrees;
    Box3 domain;
    int range_dim = 1;
    std::vector<LRBSpline> bsplines;
    std::vector<Element> elements;

    friend bool operator==(const LRSplineVolume&, const LRSplineVolume&) = default;
};

/// Indices of all B-splines whose support contains `box` (closed containment),
/// ascending.
std::vector<std::uint32_t> supporting_bsplines(const LRSplineVolume& vol, const Box3& box);

/// supporting_bsplines for every element, via a bucket grid over supports.
std::vector<std::vector<std::uint32_t>> compute_supports(const LRSplineVolume& vol);

/// Fills every element's support list. Throws ValidationError naming the first
/// element that no B-spline supports.
LRSplineVolume bind_supports(LRSplineVolume vol);

/// Tensor grid of boxes over all distinct knot values per axis. A refinement
/// of the LR box partition, so evaluation on it is exact.
std::vector<Element> derive_elements(const LRSplineVolume& vol);

/// Field value at p using the polynomial piece of `element`; p on the element's
/// faces yields the limit from inside. Requires bound supports.
void eval_lr(const LRSplineVolume& vol, std::size_t element, const Vec3& p, std::span<double> out);
std::vector<double> eval_lr(const LRSplineVolume& vol, std::size_t element, const Vec3& p);

/// Sum of gamma_i * N_i over the element's supports (1 for a valid dataset).
double basis_sum(const LRSplineVolume& vol, std::size_t element, const Vec3& p);

/// Local sampling distance for a box: min side / 2^d with d = max degree.
double local_step(const Box3& box, const TriDegree& degrees);

/// Smallest element side over the whole partition.
double min_element_side(const LRSplineVolume& vol);

}  // namespace lrvis::lr
