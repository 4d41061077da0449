// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <span>

namespace lrvis::lr {

/// Value of the univariate B-spline of degree p on the local knot vector
/// `knots` (length p+2), Cox-de Boor recursion.
///
/// Supports are half-open [first, last); the last non-empty knot interval is
/// closed when its right end coincides with `domain_hi`.
double eval_bspline_1d(std::span<const double> knots, int p, double x,
                       double domain_hi = std::numeric_limits<double>::infinity());

/// Value at x of the polynomial piece that the B-spline takes on the knot
/// interval containing `piece_ref`. Unlike eval_bspline_1d this is a
/// polynomial in x, so it gives one-sided limits on element faces.
double eval_bspline_piece(std::span<const double> knots, int p, double x, double piece_ref);

}  // namespace lrvis::lr
