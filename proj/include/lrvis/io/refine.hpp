// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "lrvis/lr/volume.hpp"

namespace lrvis::io {

/// Tensor-product volume with open knot vectors on the given breakpoints
/// (strictly increasing, first and last are the domain bounds). Coefficients
/// are zero, gammas one, elements the tensor grid.
lr::LRSplineVolume tensor_volume(const lr::TriDegree& degrees, const std::array<std::vector<double>, 3>& breaks,
                                 int range_dim);

/// Greville abscissa of a local knot vector (midpoint for degree 0).
double greville(const std::vector<double>& knots);

/// Locally refines an LR-spline volume by inserting axis-parallel mesh
/// rectangles. B-splines whose support is fully traversed by the union of
/// rectangles on one plane are split by knot insertion; coinciding functions
/// are merged with summed scaling factors. The represented field is
/// preserved exactly up to round-off.
class LRRefiner {
public:
    explicit LRRefiner(const lr::LRSplineVolume& vol);

    /// Splits every knot interval of each listed B-spline at its midpoint
    /// along all three axes, with rectangles spanning the full support.
    void refine_bsplines(const std::vector<std::size_t>& ids);

    /// Inserts one rectangle on the plane x_axis = value, covering `box`
    /// in the two other axes (the box extent along `axis` is ignored).
    void insert(int axis, double value, const Box3& box);

    /// Current state with elements listed explicitly and supports bound.
    lr::LRSplineVolume volume() const;

    std::size_t bspline_count() const;
    const std::vector<Box3>& elements() const { return elements_; }

    /// Indices (as in volume()) of B-splines whose support contains the box.
    std::vector<std::size_t> supporting(const Box3& box) const;

private:
    struct Fn {
        std::array<std::vector<double>, 3> knots;
        std::vector<double> coef;
        double gamma = 1.0;
        bool alive = true;
    };
    struct Rect {
        double lo[2], hi[2];
    };
    using Line = std::pair<int, double>;

    void add_rect(int axis, double value, const Rect& r);
    void resolve();
    bool try_split(std::size_t f, std::vector<std::size_t>& queue);
    bool covered(const std::vector<Rect>& rects, const double lo[2], const double hi[2]) const;
    std::size_t add_or_merge(std::array<std::vector<double>, 3> knots, const std::vector<double>& coef,
                             double gamma);
    void split_elements();
    std::vector<std::size_t> alive_indices() const;

    lr::TriDegree degrees_;
    Box3 domain_;
    int range_dim_ = 1;
    std::vector<Fn> fns_;
    std::map<std::array<std::vector<double>, 3>, std::size_t> index_;
    std::map<Line, std::vector<Rect>> lines_;
    std::vector<Box3> elements_;
};

}  // namespace lrvis::io
