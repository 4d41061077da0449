// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>

namespace lrvis::accel {

inline constexpr int kMaxDyadicLevel = 30;

/// Smallest i <= 30 with |u - m / 2^i| <= 1e-12 for an integer m, where u is a
/// domain-normalized coordinate.
inline std::optional<int> dyadic_level(double u) {
    for (int i = 0; i <= kMaxDyadicLevel; ++i) {
        const double scaled = std::ldexp(u, i);
        if (std::abs(scaled - std::round(scaled)) <= std::ldexp(1e-12, i)) return i;
    }
    return std::nullopt;
}

}  // namespace lrvis::accel
