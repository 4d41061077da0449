// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/lr/bspline.hpp"

#include <array>
#include <cassert>

namespace lrvis::lr {
namespace {

constexpr int kMaxDegree = 16;

// Triangular Cox-de Boor table seeded with the indicator of interval `active`.
double cox_de_boor(std::span<const double> t, int p, double x, int active) {
    if (active < 0) return 0.0;
    std::array<double, kMaxDegree + 1> n{};
    n[static_cast<std::size_t>(active)] = 1.0;
    for (int d = 1; d <= p; ++d) {
        for (int k = 0; k + d <= p; ++k) {
            double value = 0.0;
            const double left_span = t[k + d] - t[k];
            if (left_span > 0.0) value += (x - t[k]) / left_span * n[k];
            const double right_span = t[k + d + 1] - t[k + 1];
            if (right_span > 0.0) value += (t[k + d + 1] - x) / right_span * n[k + 1];
            n[k] = value;
        }
    }
    return n[0];
}

}  // namespace

double eval_bspline_1d(std::span<const double> knots, int p, double x, double domain_hi) {
    assert(p >= 0 && p <= kMaxDegree);
    assert(knots.size() == static_cast<std::size_t>(p) + 2);
    const double first = knots.front();
    const double last = knots.back();
    int active = -1;
    if (x >= first && x < last) {
        for (int k = 0; k <= p; ++k) {
            if (knots[k] <= x && x < knots[k + 1]) {
                active = k;
                break;
            }
        }
    } else if (x == last && last == domain_hi && first < last) {
        for (int k = p; k >= 0; --k) {
            if (knots[k] < knots[k + 1]) {
                active = k;
                break;
            }
        }
    }
    return cox_de_boor(knots, p, x, active);
}

double eval_bspline_piece(std::span<const double> knots, int p, double x, double piece_ref) {
    assert(p >= 0 && p <= kMaxDegree);
    assert(knots.size() == static_cast<std::size_t>(p) + 2);
    int active = -1;
    for (int k = 0; k <= p; ++k) {
        if (knots[k] <= piece_ref && piece_ref < knots[k + 1]) {
            active = k;
            break;
        }
    }
    return cox_de_boor(knots, p, x, active);
}

}  // namespace lrvis::lr
