// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "lrvis/accel/partition.hpp"

namespace lrvis::accel {

/// Uniform pseudo-random points in the box; identical for identical seeds.
std::vector<Vec3> random_points(const Box3& box, std::size_t count, std::uint64_t seed);

/// Points within a relative distance `rel` of randomly chosen element faces,
/// including points exactly on the faces.
std::vector<Vec3> boundary_points(const Partition& part, std::size_t count, std::uint64_t seed, double rel = 1e-9);

struct DepthStatsRow {
    bool present = false;
    double mean = 0.0;
    double max = 0.0;
    double var = 0.0;
};

struct ThroughputResult {
    std::string name;
    double lookups_per_second = 0.0;  // median over repetitions
    std::uint64_t checksum = 0;
};

/// Times `lookup` over `points`: one warm-up pass, then `repetitions` timed
/// passes; reports the median rate.
template <class Lookup>
ThroughputResult measure_throughput(std::string name, const std::vector<Vec3>& points, int repetitions,
                                    Lookup&& lookup) {
    using clock = std::chrono::steady_clock;
    ThroughputResult r{std::move(name), 0.0, 0};
    for (const Vec3& p : points) r.checksum += lookup(p);
    std::vector<double> rates;
    for (int rep = 0; rep < std::max(repetitions, 1); ++rep) {
        std::uint64_t sum = 0;
        const auto t0 = clock::now();
        for (const Vec3& p : points) sum += lookup(p);
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (sum != r.checksum) r.checksum ^= sum;  // keeps the loop observable
        rates.push_back(static_cast<double>(points.size()) / std::max(secs, 1e-12));
    }
    std::sort(rates.begin(), rates.end());
    r.lookups_per_second = rates[rates.size() / 2];
    return r;
}

struct BenchOptions {
    std::vector<std::string> structures{"linear", "grid", "octree", "kdtree", "forest"};
    std::vector<int> grids{1, 8, 64, 512};  // forest blocks per axis
    std::size_t points = 100000;
    int repetitions = 5;
    std::uint64_t seed = 1;
};

/// One structure (or one forest grid). Depth columns are filled for the
/// k-d tree and forests; inapplicable rows carry the reason instead.
struct BenchRow {
    std::string structure;
    int grid = 0;
    bool applicable = true;
    std::string note;
    DepthStatsRow depth;
    double lookups_per_second = 0.0;
};

/// Builds each requested structure on the partition and measures lookup
/// throughput on the same random point sequence. Throws ValidationError on
/// unknown structure names.
std::vector<BenchRow> run_benchmark(const Partition& part, const BenchOptions& options);

/// Header `structure,grid,applicable,mean_depth,max_depth,var_depth,lookups_per_second,note`.
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace lrvis::accel
