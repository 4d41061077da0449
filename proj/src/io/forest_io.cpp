// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/io/forest_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "lrvis/core/error.hpp"
#include "lrvis/io/files.hpp"

namespace lrvis::io {
namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
public:
    explicit Reader(const std::vector<std::uint8_t>& b) : b_(b) {}
    std::uint32_t u32() {
        if (pos_ + 4 > b_.size()) throw FormatError("forest file truncated");
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }
    bool done() const { return pos_ == b_.size(); }

private:
    const std::vector<std::uint8_t>& b_;
    std::size_t pos_ = 0;
};

// Depth of the subtree rooted at a node slot, with cycle protection.
int subtree_depth(const accel::KdForest& f, std::uint32_t idx, int level) {
    if (idx >= f.nodes.size()) throw FormatError("forest node pointer out of range");
    if (static_cast<std::size_t>(level) > f.nodes.size()) throw FormatError("forest node graph has a cycle");
    const std::uint32_t w = f.nodes[idx].word_r;
    if (accel::is_leaf(w)) return 0;
    if (accel::axis_of(w) > 2) throw FormatError("forest node has an invalid axis code");
    const std::uint32_t left = accel::payload_of(w);
    if (left <= idx) throw FormatError("forest left pointer does not descend");
    return 1 + std::max(subtree_depth(f, idx + 1, level + 1), subtree_depth(f, left, level + 1));
}

}  // namespace

std::vector<std::uint8_t> encode_forest(const accel::KdForest& f) {
    std::vector<std::uint8_t> out = {'L', 'R', 'K', 'F'};
    put_u32(out, kForestFormatVersion);
    for (int g : f.grid) put_u32(out, static_cast<std::uint32_t>(g));
    put_u32(out, static_cast<std::uint32_t>(f.nodes.size()));
    for (std::uint32_t r : f.roots) put_u32(out, r);
    for (const auto& n : f.nodes) {
        put_u32(out, n.word_r);
        put_u32(out, std::bit_cast<std::uint32_t>(n.split_g));
    }
    return out;
}

accel::KdForest decode_forest(const std::vector<std::uint8_t>& bytes, const accel::Partition& part) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), "LRKF", 4) != 0) throw FormatError("not a forest file");
    const std::vector<std::uint8_t> body(bytes.begin() + 4, bytes.end());
    Reader r(body);
    if (r.u32() != kForestFormatVersion) throw FormatError("unsupported forest file version");
    accel::KdForest f;
    std::size_t blocks = 1;
    for (int a = 0; a < 3; ++a) {
        const std::uint32_t g = r.u32();
        if (g == 0 || g > 4096) throw FormatError("forest grid dimension out of range");
        f.grid[a] = static_cast<int>(g);
        blocks *= g;
    }
    const std::uint32_t node_count = r.u32();
    if (node_count > accel::kMaxPayload + 1 || (blocks + 2ull * node_count) * 4 > body.size())
        throw FormatError("forest file truncated");
    f.roots.resize(blocks);
    for (auto& w : f.roots) w = r.u32();
    f.nodes.resize(node_count);
    for (auto& n : f.nodes) {
        n.word_r = r.u32();
        n.split_g = std::bit_cast<float>(r.u32());
    }
    if (!r.done()) throw FormatError("trailing bytes after forest nodes");

    f.domain = part.domain;
    for (int a = 0; a < 3; ++a) f.bins[a] = accel::AxisBins(part.domain.lo[a], part.domain.hi[a], f.grid[a]);

    // Recover exact splits: the boundary whose float rounding is split_g.
    std::array<std::vector<double>, 3> bounds;
    for (const Box3& b : part.boxes)
        for (int a = 0; a < 3; ++a) {
            bounds[a].push_back(b.lo[a]);
            bounds[a].push_back(b.hi[a]);
        }
    for (auto& v : bounds) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    f.splits.resize(node_count, 0.0);
    for (std::size_t i = 0; i < node_count; ++i) {
        const std::uint32_t w = f.nodes[i].word_r;
        if (accel::is_leaf(w)) {
            const std::uint32_t e = accel::payload_of(w);
            if (e != accel::kPayloadMask && e >= part.size()) throw FormatError("forest leaf names a missing element");
            continue;
        }
        const int a = accel::axis_of(w);
        if (a > 2) throw FormatError("forest node has an invalid axis code");
        const double g = f.nodes[i].split_g;
        const auto& v = bounds[a];
        auto it = std::lower_bound(v.begin(), v.end(), g);
        double best = g, dist = INFINITY;
        for (auto c = it == v.begin() ? it : it - 1; c != v.end() && c <= it + 1; ++c)
            if (static_cast<float>(*c) == f.nodes[i].split_g && std::abs(*c - g) < dist) {
                best = *c;
                dist = std::abs(*c - g);
            }
        f.splits[i] = best;
    }

    f.block_depth.assign(blocks, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::uint32_t w = f.roots[b];
        if (accel::is_leaf(w)) {
            const std::uint32_t e = accel::payload_of(w);
            if (e != accel::kPayloadMask && e >= part.size()) throw FormatError("forest root names a missing element");
            continue;
        }
        f.block_depth[b] = subtree_depth(f, accel::payload_of(w), 0);
    }
    return f;
}

void save_forest(const accel::KdForest& forest, const std::filesystem::path& path) {
    write_atomic(path, encode_forest(forest));
}

accel::KdForest load_forest(const std::filesystem::path& path, const accel::Partition& part) {
    return decode_forest(read_bytes(path), part);
}

}  // namespace lrvis::io
