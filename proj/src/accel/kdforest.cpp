// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/accel/kdforest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lrvis::accel {
namespace {

constexpr int kMaxTreeDepth = 4096;

struct SplitChoice {
    int axis = -1;
    double value = 0.0;
    std::size_t imbalance = std::numeric_limits<std::size_t>::max();
    double extent = 0.0;
};

// Mean of the distinct element boundaries strictly inside the region,
// snapped to the nearest boundary (lower one on a tie).
bool candidate_split(const Partition& part, const std::vector<ElementId>& ids, const Box3& region, int axis,
                     std::vector<double>& scratch, double& out) {
    scratch.clear();
    for (ElementId e : ids) {
        const Box3& b = part.boxes[e];
        for (double x : {b.lo[axis], b.hi[axis]})
            if (x > region.lo[axis] && x < region.hi[axis]) scratch.push_back(x);
    }
    if (scratch.empty()) return false;
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    double mean = 0.0;
    for (double x : scratch) mean += x;
    mean /= static_cast<double>(scratch.size());
    auto it = std::lower_bound(scratch.begin(), scratch.end(), mean);
    if (it == scratch.end()) {
        out = scratch.back();
    } else if (it == scratch.begin() || *it == mean) {
        out = *it;
    } else {
        const double above = *it, below = *(it - 1);
        out = (above - mean < mean - below) ? above : below;
    }
    return true;
}

class TreeBuilder {
public:
    TreeBuilder(const Partition& part, std::vector<PackedNode>& nodes, std::vector<double>& splits)
        : part_(part), nodes_(nodes), splits_(splits) {}

    // Emits the subtree into the next slot and returns its depth.
    int emit(const std::vector<ElementId>& ids, const Box3& region, int level) {
        const std::size_t slot = nodes_.size();
        if (slot > kMaxPayload) throw StructureError("k-d forest node count exceeds 29-bit payload");
        if (ids.size() <= 1) {
            nodes_.push_back({make_leaf(ids.empty() ? kPayloadMask : ids.front()), 0.0f});
            splits_.push_back(0.0);
            return 0;
        }
        if (level >= kMaxTreeDepth) throw StructureError("k-d tree depth limit reached");

        SplitChoice best;
        const Vec3 ext = region.extent();
        for (int a = 0; a < 3; ++a) {
            double s;
            if (!candidate_split(part_, ids, region, a, scratch_, s)) continue;
            std::size_t left = 0, right = 0;
            for (ElementId e : ids) {
                left += part_.boxes[e].lo[a] < s;
                right += part_.boxes[e].hi[a] > s;
            }
            const std::size_t imbalance = left > right ? left - right : right - left;
            if (imbalance < best.imbalance || (imbalance == best.imbalance && ext[a] > best.extent))
                best = {a, s, imbalance, ext[a]};
        }
        if (best.axis < 0)
            throw StructureError("no interior element boundary in a region holding " + std::to_string(ids.size()) +
                                 " elements");

        const int a = best.axis;
        const double s = best.value;
        std::vector<ElementId> left_ids, right_ids;
        for (ElementId e : ids) {
            if (part_.boxes[e].lo[a] < s) left_ids.push_back(e);
            if (part_.boxes[e].hi[a] > s) right_ids.push_back(e);
        }
        Box3 left_region = region, right_region = region;
        left_region.hi[a] = s;
        right_region.lo[a] = s;

        nodes_.push_back({make_internal(a, 0), static_cast<float>(s)});
        splits_.push_back(s);
        const int right_depth = emit(right_ids, right_region, level + 1);
        const std::size_t left_slot = nodes_.size();
        const int left_depth = emit(left_ids, left_region, level + 1);
        nodes_[slot].word_r = make_internal(a, static_cast<std::uint32_t>(left_slot));
        return 1 + std::max(left_depth, right_depth);
    }

private:
    const Partition& part_;
    std::vector<PackedNode>& nodes_;
    std::vector<double>& splits_;
    std::vector<double> scratch_;
};

class ForestBuilder {
public:
    ForestBuilder(const Partition& part, KdForest& f) : part_(part), f_(f) {}

    // Recursive bisection of the block index range; ranges covered by a single
    // element are filled directly without per-block work.
    void build(std::array<int, 3> lo, std::array<int, 3> hi, const std::vector<ElementId>& ids) {
        if (ids.size() == 1) {
            for (int k = lo[2]; k < hi[2]; ++k)
                for (int j = lo[1]; j < hi[1]; ++j)
                    for (int i = lo[0]; i < hi[0]; ++i) {
                        const std::size_t b = index(i, j, k);
                        f_.roots[b] = make_leaf(ids.front());
                        f_.block_depth[b] = 0;
                    }
            return;
        }
        int axis = 0;
        for (int a = 1; a < 3; ++a)
            if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;
        if (hi[axis] - lo[axis] == 1) {
            const std::size_t b = index(lo[0], lo[1], lo[2]);
            if (ids.empty()) {
                f_.roots[b] = make_leaf(kPayloadMask);
                f_.block_depth[b] = 0;
                return;
            }
            int depth = 0;
            f_.roots[b] = append_kdtree(part_, ids, range_box(lo, hi), f_.nodes, f_.splits, depth);
            f_.block_depth[b] = depth;
            return;
        }
        const int mid = lo[axis] + (hi[axis] - lo[axis]) / 2;
        auto lo_hi = hi;
        lo_hi[axis] = mid;
        auto hi_lo = lo;
        hi_lo[axis] = mid;
        build(lo, lo_hi, filter(ids, range_box(lo, lo_hi)));
        build(hi_lo, hi, filter(ids, range_box(hi_lo, hi)));
    }

    Box3 range_box(const std::array<int, 3>& lo, const std::array<int, 3>& hi) const {
        Box3 b;
        for (int a = 0; a < 3; ++a) {
            b.lo[a] = f_.bins[a].edges()[lo[a]];
            b.hi[a] = f_.bins[a].edges()[hi[a]];
        }
        return b;
    }

private:
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(f_.grid[0]) * (static_cast<std::size_t>(j) +
                                                       static_cast<std::size_t>(f_.grid[1]) * k);
    }

    std::vector<ElementId> filter(const std::vector<ElementId>& ids, const Box3& box) const {
        std::vector<ElementId> out;
        for (ElementId e : ids)
            if (part_.boxes[e].overlaps(box)) out.push_back(e);
        return out;
    }

    const Partition& part_;
    KdForest& f_;
};

}  // namespace

std::uint32_t append_kdtree(const Partition& part, const std::vector<ElementId>& ids, const Box3& region,
                            std::vector<PackedNode>& nodes, std::vector<double>& splits, int& depth) {
    if (ids.size() == 1) {
        depth = 0;
        return make_leaf(ids.front());
    }
    const std::size_t root = nodes.size();
    TreeBuilder builder(part, nodes, splits);
    depth = builder.emit(ids, region, 0);
    return make_internal(0, static_cast<std::uint32_t>(root));
}

KdForest build_kdforest(const Partition& part, std::array<int, 3> grid) {
    std::size_t blocks = 1;
    for (int g : grid) {
        if (g < 1) throw ValidationError("forest grid dimensions must be positive");
        blocks *= static_cast<std::size_t>(g);
    }
    if (blocks > (std::size_t{1} << 27)) throw Error("forest grid exceeds the block budget");
    if (part.boxes.size() > kMaxPayload) throw StructureError("element count exceeds 29-bit payload");

    KdForest f;
    f.domain = part.domain;
    f.grid = grid;
    for (int a = 0; a < 3; ++a) f.bins[a] = AxisBins(part.domain.lo[a], part.domain.hi[a], grid[a]);
    f.roots.assign(blocks, make_leaf(kPayloadMask));
    f.block_depth.assign(blocks, 0);

    std::vector<ElementId> ids(part.boxes.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<ElementId>(i);
    ForestBuilder builder(part, f);
    builder.build({0, 0, 0}, grid, ids);
    return f;
}

ElementId KdForest::lookup_packed(const Vec3& p) const {
    if (!in_domain(domain, p)) return kNoElement;
    const Vec3f q(p);
    std::uint32_t word = roots[block_index(p)];
    if (word & kLeafBit) return leaf_element(word);
    std::uint32_t idx = word & kPayloadMask;
    for (std::size_t guard = 0; guard <= nodes.size(); ++guard) {
        const PackedNode& n = nodes[idx];
        if (n.word_r & kLeafBit) return leaf_element(n.word_r);
        idx = q[axis_of(n.word_r)] < n.split_g ? (n.word_r & kPayloadMask) : idx + 1;
    }
    throw StructureError("k-d forest traversal exceeded node count");
}

ElementId KdForest::lookup_counted(const Vec3& p, int& steps) const {
    steps = 0;
    if (!in_domain(domain, p)) return kNoElement;
    std::uint32_t word = roots[block_index(p)];
    if (word & kLeafBit) return leaf_element(word);
    std::uint32_t idx = word & kPayloadMask;
    for (std::size_t guard = 0; guard <= nodes.size(); ++guard) {
        const std::uint32_t w = nodes[idx].word_r;
        if (w & kLeafBit) return leaf_element(w);
        ++steps;
        idx = p[axis_of(w)] < splits[idx] ? (w & kPayloadMask) : idx + 1;
    }
    throw StructureError("k-d forest traversal exceeded node count");
}

int KdForest::max_depth() const {
    int d = 0;
    for (int x : block_depth) d = std::max(d, x);
    return d;
}

int default_forest_grid(std::size_t element_count) {
    const double g = std::round(std::cbrt(static_cast<double>(element_count)));
    return static_cast<int>(std::clamp(g, 1.0, 512.0));
}

DepthStats depth_stats(const KdForest& forest) {
    DepthStats s;
    if (forest.block_depth.empty()) return s;
    double sum = 0.0, mn = forest.block_depth.front(), mx = mn;
    for (int d : forest.block_depth) {
        sum += d;
        mn = std::min<double>(mn, d);
        mx = std::max<double>(mx, d);
    }
    const double n = static_cast<double>(forest.block_depth.size());
    const double mean = sum / n;
    double var = 0.0;
    for (int d : forest.block_depth) var += (d - mean) * (d - mean);
    s.min_depth = mn;
    s.max_depth = mx;
    s.mean_depth = mean;
    s.var_depth = var / n;
    return s;
}

}  // namespace lrvis::accel
