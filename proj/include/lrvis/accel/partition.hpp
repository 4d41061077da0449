// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lrvis/core/vec.hpp"
#include "lrvis/lr/volume.hpp"

namespace lrvis::accel {

using ElementId = std::uint32_t;
inline constexpr ElementId kNoElement = 0xFFFFFFFFu;

/// Element boxes of a box partition; all lookup structures index into this.
struct Partition {
    Box3 domain;
    std::vector<Box3> boxes;

    static Partition from(const lr::LRSplineVolume& vol);
    std::size_t size() const { return boxes.size(); }
};

/// Outcome of building a structure that only applies to some datasets.
template <class T>
struct BuildResult {
    std::optional<T> value;
    std::string reason;  // set when not applicable

    static BuildResult ok(T v) { return {std::move(v), {}}; }
    static BuildResult inapplicable(std::string why) { return {std::nullopt, std::move(why)}; }
    explicit operator bool() const { return value.has_value(); }
};

/// True when p lies in the closed domain (false for NaN coordinates).
inline bool in_domain(const Box3& domain, const Vec3& p) {
    for (int a = 0; a < 3; ++a)
        if (!(p[a] >= domain.lo[a] && p[a] <= domain.hi[a])) return false;
    return true;
}

/// O(N) scan; the reference every other structure must agree with.
/// Half-open boxes, closed at the domain maximum.
ElementId lookup_linear(const Partition& part, const Vec3& p);

/// Regular binning of one axis with exact edge values. The bin of x is
/// computed arithmetically and then corrected against the stored edges, so
/// the result never depends on floating-point rounding of the division.
class AxisBins {
public:
    AxisBins() = default;
    AxisBins(double lo, double hi, int count);

    int count() const { return count_; }
    const std::vector<double>& edges() const { return edges_; }
    std::vector<double>& edges() { return edges_; }

    /// Bin index for x in [lo, hi]; the last bin is closed.
    int bin(double x) const {
        int i = static_cast<int>((x - lo_) * scale_);
        i = i < 0 ? 0 : (i >= count_ ? count_ - 1 : i);
        if (x < edges_[i] && i > 0)
            --i;
        else if (x >= edges_[i + 1] && i + 1 < count_)
            ++i;
        return i;
    }

    /// Bins whose half-open interval overlaps (a, b) with positive length.
    std::pair<int, int> overlapping(double a, double b) const;

private:
    double lo_ = 0.0;
    double scale_ = 1.0;
    int count_ = 1;
    std::vector<double> edges_;
};

}  // namespace lrvis::accel
