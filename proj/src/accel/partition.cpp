// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/accel/partition.hpp"

#include <algorithm>

namespace lrvis::accel {

Partition Partition::from(const lr::LRSplineVolume& vol) {
    Partition part;
    part.domain = vol.domain;
    part.boxes.reserve(vol.elements.size());
    for (const auto& e : vol.elements) part.boxes.push_back(e.box);
    return part;
}

ElementId lookup_linear(const Partition& part, const Vec3& p) {
    if (!in_domain(part.domain, p)) return kNoElement;
    for (std::size_t i = 0; i < part.boxes.size(); ++i)
        if (contains_half_open(part.boxes[i], p, part.domain)) return static_cast<ElementId>(i);
    return kNoElement;
}

AxisBins::AxisBins(double lo, double hi, int count)
    : lo_(lo), scale_(count / (hi - lo)), count_(count), edges_(static_cast<std::size_t>(count) + 1) {
    for (int i = 0; i <= count; ++i) edges_[i] = lo + (hi - lo) * (static_cast<double>(i) / count);
    edges_.front() = lo;
    edges_.back() = hi;
}

std::pair<int, int> AxisBins::overlapping(double a, double b) const {
    // first bin with edges[i+1] > a, last bin with edges[i] < b
    const auto first = std::upper_bound(edges_.begin() + 1, edges_.end(), a) - (edges_.begin() + 1);
    const auto last = std::lower_bound(edges_.begin(), edges_.end() - 1, b) - edges_.begin() - 1;
    return {static_cast<int>(first), static_cast<int>(last)};
}

}  // namespace lrvis::accel
