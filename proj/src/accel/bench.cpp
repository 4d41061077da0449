// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/accel/bench.hpp"

#include <cmath>
#include <ostream>

#include "lrvis/accel/grid_table.hpp"
#include "lrvis/accel/kdforest.hpp"
#include "lrvis/accel/octree.hpp"
#include "lrvis/core/error.hpp"

namespace lrvis::accel {

std::vector<Vec3> random_points(const Box3& box, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec3> pts(count);
    const Vec3 ext = box.extent();
    for (auto& p : pts)
        for (int a = 0; a < 3; ++a) p[a] = std::min(box.lo[a] + u(rng) * ext[a], box.hi[a]);
    return pts;
}

std::vector<Vec3> boundary_points(const Partition& part, std::size_t count, std::uint64_t seed, double rel) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, part.boxes.size() - 1);
    std::uniform_int_distribution<int> face(0, 5), offset(-1, 1);
    const Vec3 dext = part.domain.extent();
    std::vector<Vec3> pts;
    pts.reserve(count);
    while (pts.size() < count) {
        const Box3& b = part.boxes[pick(rng)];
        const int f = face(rng);
        const int axis = f / 2;
        Vec3 p;
        for (int a = 0; a < 3; ++a) p[a] = b.lo[a] + u(rng) * (b.hi[a] - b.lo[a]);
        p[axis] = (f % 2 ? b.hi[axis] : b.lo[axis]) + offset(rng) * rel * dext[axis];
        // Snap a corner coordinate too, now and then, to hit edges and corners.
        if (u(rng) < 0.25) {
            const int other = (axis + 1 + static_cast<int>(u(rng) * 2)) % 3;
            p[other] = u(rng) < 0.5 ? b.lo[other] : b.hi[other];
        }
        pts.push_back(part.domain.clamp(p));
    }
    return pts;
}

namespace {

DepthStatsRow depth_row(const KdForest& f) {
    const DepthStats d = depth_stats(f);
    return {true, d.mean_depth, d.max_depth, d.var_depth};
}

}  // namespace

std::vector<BenchRow> run_benchmark(const Partition& part, const BenchOptions& options) {
    for (const auto& s : options.structures)
        if (s != "linear" && s != "grid" && s != "octree" && s != "kdtree" && s != "forest")
            throw ValidationError("unknown structure '" + s + "' (linear, grid, octree, kdtree, forest)");
    const auto points = random_points(part.domain, options.points, options.seed);
    std::vector<BenchRow> rows;
    auto time = [&](BenchRow& row, auto&& lookup, const std::vector<Vec3>& pts) {
        row.lookups_per_second = measure_throughput(row.structure, pts, options.repetitions, lookup).lookups_per_second;
    };
    for (const auto& s : options.structures) {
        if (s == "linear") {
            BenchRow row;
            row.structure = s;
            // Quadratic cost: cap the work, the rate stays comparable.
            const std::size_t n = std::clamp<std::size_t>(20000000 / std::max<std::size_t>(part.size(), 1), 100, points.size());
            const std::vector<Vec3> sub(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(std::min(n, points.size())));
            time(row, [&](const Vec3& p) { return lookup_linear(part, p); }, sub);
            rows.push_back(row);
        } else if (s == "grid") {
            BenchRow row;
            row.structure = s;
            const auto res = finest_dyadic_resolution(part);
            if (!res) {
                row.applicable = false;
                row.note = "no common dyadic lattice";
            } else {
                const auto built = build_grid_table(part, *res);
                if (!built) {
                    row.applicable = false;
                    row.note = built.reason;
                } else {
                    row.grid = (*res)[0];
                    time(row, [&](const Vec3& p) { return built.value->lookup(p); }, points);
                }
            }
            rows.push_back(row);
        } else if (s == "octree") {
            BenchRow row;
            row.structure = s;
            const auto built = build_octree(part);
            if (!built) {
                row.applicable = false;
                row.note = built.reason;
            } else {
                time(row, [&](const Vec3& p) { return built.value->lookup(p); }, points);
            }
            rows.push_back(row);
        } else if (s == "kdtree") {
            BenchRow row;
            row.structure = s;
            row.grid = 1;
            const KdForest f = build_kdtree(part);
            row.depth = depth_row(f);
            time(row, [&](const Vec3& p) { return f.lookup(p); }, points);
            rows.push_back(row);
        } else {
            for (int g : options.grids) {
                BenchRow row;
                row.structure = s;
                row.grid = g;
                try {
                    const KdForest f = build_kdforest(part, {g, g, g});
                    row.depth = depth_row(f);
                    time(row, [&](const Vec3& p) { return f.lookup(p); }, points);
                } catch (const Error& e) {
                    row.applicable = false;
                    row.note = e.what();
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    const auto old = os.precision(8);
    os << "structure,grid,applicable,mean_depth,max_depth,var_depth,lookups_per_second,note\n";
    for (const auto& r : rows) {
        os << r.structure << ',' << r.grid << ',' << (r.applicable ? 1 : 0) << ',';
        if (r.depth.present) os << r.depth.mean << ',' << r.depth.max << ',' << r.depth.var << ',';
        else os << ",,,";
        if (r.applicable) os << r.lookups_per_second;
        std::string note = r.note;
        for (char& c : note)
            if (c == ',' || c == '\n') c = ';';
        os << ',' << note << '\n';
    }
    os.precision(old);
}

}  // namespace lrvis::accel
