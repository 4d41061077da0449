// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "datasets.hpp"
#include "lrvis/accel/bench.hpp"
#include "lrvis/accel/field_evaluator.hpp"
#include "lrvis/accel/grid_table.hpp"
#include "lrvis/accel/kdforest.hpp"
#include "lrvis/accel/octree.hpp"
#include "lrvis/accel/partition.hpp"
#include "lrvis/core/error.hpp"
#include "lrvis/lr/bezier.hpp"
#include "oracles.hpp"

namespace lrvis::accel {
namespace {

const Box3 kUnit{{0, 0, 0}, {1, 1, 1}};

Partition grid_partition(int nx, int ny, int nz) {
    Partition p;
    p.domain = kUnit;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                p.boxes.push_back({{double(i) / nx, double(j) / ny, double(k) / nz},
                                   {double(i + 1) / nx, double(j + 1) / ny, double(k + 1) / nz}});
    return p;
}

Partition split_at(double x) {
    Partition p;
    p.domain = kUnit;
    p.boxes = {{{0, 0, 0}, {x, 1, 1}}, {{x, 0, 0}, {1, 1, 1}}};
    return p;
}

struct NamedPartition {
    std::string name;
    Partition part;
};

std::vector<NamedPartition> test_partitions() {
    std::vector<NamedPartition> out;
    for (const auto& d : testing::standard_datasets(2)) out.push_back({d.name, Partition::from(d.vol)});
    out.push_back({"dyadic-p1", Partition::from(testing::dyadic_dataset(1, 3))});
    return out;
}

// --- linear scan -------------------------------------------------------------

TEST(LookupLinear, SingleElement) {
    const auto p = grid_partition(1, 1, 1);
    EXPECT_EQ(lookup_linear(p, {0.3, 0.2, 0.9}), 0u);
}

TEST(LookupLinear, HalfOpenAtInteriorFace) {
    const auto p = split_at(0.5);
    EXPECT_EQ(lookup_linear(p, {0.5, 0.3, 0.3}), 1u);
    EXPECT_EQ(lookup_linear(p, {std::nextafter(0.5, 0.0), 0.3, 0.3}), 0u);
}

TEST(LookupLinear, ClosedAtDomainMax) {
    const auto p = grid_partition(2, 2, 2);
    EXPECT_EQ(lookup_linear(p, {1, 1, 1}), 7u);
    EXPECT_EQ(lookup_linear(p, {0, 0, 0}), 0u);
}

TEST(LookupLinear, OutsideIsNotFound) {
    const auto p = grid_partition(2, 2, 2);
    EXPECT_EQ(lookup_linear(p, {1.0000001, 0.5, 0.5}), kNoElement);
    EXPECT_EQ(lookup_linear(p, {-1e-300, 0.5, 0.5}), kNoElement);
    EXPECT_EQ(lookup_linear(p, {NAN, 0.5, 0.5}), kNoElement);
}

TEST(LookupLinear, AgreesWithExhaustiveOracle) {
    const auto part = Partition::from(testing::dyadic_dataset(2, 3));
    for (const Vec3& q : boundary_points(part, 2000, 3)) EXPECT_EQ(lookup_linear(part, q), testing::oracle_locate(part.boxes, part.domain, q));
}

TEST(AxisBins, ExactEdgesDecideTheBin) {
    const AxisBins b(0.0, 1.0, 10);
    for (int i = 0; i < 10; ++i) {
        const double e = b.edges()[i];
        EXPECT_EQ(b.bin(e), i);
        if (i > 0) EXPECT_EQ(b.bin(std::nextafter(e, 0.0)), i - 1);
    }
    EXPECT_EQ(b.bin(1.0), 9);
}

// --- grid table ---------------------------------------------------------------

TEST(GridTable, SingleElementAnyResolution) {
    const auto p = grid_partition(1, 1, 1);
    for (int r : {1, 3, 7}) {
        const auto g = build_grid_table(p, {r, r, r});
        ASSERT_TRUE(g) << g.reason;
        EXPECT_EQ(g.value->lookup({0.99, 0.5, 0.01}), 0u);
    }
}

TEST(GridTable, NonDyadicKnotIsInapplicable) {
    const auto g = build_grid_table(split_at(1.0 / 3.0), {8, 8, 8});
    EXPECT_FALSE(g);
    EXPECT_FALSE(g.reason.empty());
    EXPECT_FALSE(finest_dyadic_resolution(split_at(1.0 / 3.0)));
}

TEST(GridTable, DyadicDatasetAtFinestSpacingMatchesOracle) {
    const auto part = Partition::from(testing::dyadic_dataset(2, 3));
    const auto res = finest_dyadic_resolution(part);
    ASSERT_TRUE(res);
    EXPECT_EQ((*res)[0], 64);
    const auto g = build_grid_table(part, *res);
    ASSERT_TRUE(g) << g.reason;
    for (const Vec3& q : random_points(kUnit, 20000, 1)) ASSERT_EQ(g.value->lookup(q), lookup_linear(part, q));
    for (const Vec3& q : boundary_points(part, 5000, 2)) ASSERT_EQ(g.value->lookup(q), lookup_linear(part, q));
}

TEST(GridTable, CoarserThanElementsIsInapplicable) {
    const auto part = Partition::from(testing::dyadic_dataset(1, 3));
    EXPECT_FALSE(build_grid_table(part, {32, 32, 32}));
}

// --- octree ----------------------------------------------------------------------

TEST(Octree, OneSplitPerAxisGivesDepthOne) {
    const auto o = build_octree(grid_partition(2, 2, 2));
    ASSERT_TRUE(o) << o.reason;
    EXPECT_EQ(o.value->depth, 1);
    EXPECT_EQ(o.value->node_count(), 1u);
    int leaves = 0;
    for (auto w : o.value->children) leaves += is_leaf(w) ? 1 : 0;
    EXPECT_EQ(leaves, 8);
}

TEST(Octree, NonDyadicKnotIsInapplicable) {
    const auto o = build_octree(split_at(0.3));
    EXPECT_FALSE(o);
    EXPECT_NE(o.reason.find("0.3"), std::string::npos) << o.reason;
}

TEST(Octree, NonDyadicDatasetIsInapplicable) {
    EXPECT_FALSE(build_octree(Partition::from(testing::nondyadic_dataset(1))));
}

TEST(Octree, MatchesOracleOnDyadicDataset) {
    const auto part = Partition::from(testing::dyadic_dataset(2, 3));
    const auto o = build_octree(part);
    ASSERT_TRUE(o) << o.reason;
    for (const Vec3& q : random_points(kUnit, 100000, 4)) ASSERT_EQ(o.value->lookup(q), lookup_linear(part, q));
    for (const Vec3& q : boundary_points(part, 10000, 5)) ASSERT_EQ(o.value->lookup(q), lookup_linear(part, q));
}

TEST(Octree, StepCountBoundedByDepth) {
    const auto part = Partition::from(testing::dyadic_dataset(1, 3));
    const auto o = build_octree(part);
    ASSERT_TRUE(o);
    for (const Vec3& q : random_points(kUnit, 5000, 6)) {
        int steps = 0;
        o.value->lookup_counted(q, steps);
        ASSERT_LE(steps, o.value->depth);
    }
}

// --- k-d tree / forest -----------------------------------------------------------

TEST(KdTree, TwoElementsOneInternalNode) {
    const auto f = build_kdtree(split_at(0.5));
    ASSERT_EQ(f.nodes.size(), 3u);
    const auto root = f.nodes[0].word_r;
    EXPECT_FALSE(is_leaf(root));
    EXPECT_EQ(axis_of(root), 0);
    EXPECT_EQ(f.nodes[0].split_g, 0.5f);
    // Right child in the next slot, left child at the payload.
    EXPECT_EQ(f.nodes[1].word_r, make_leaf(1));
    EXPECT_EQ(f.nodes[payload_of(root)].word_r, make_leaf(0));
    EXPECT_EQ(f.max_depth(), 1);
}

TEST(KdTree, TwoByTwoLayoutIsBalanced) {
    const auto part = grid_partition(2, 2, 1);
    const auto f = build_kdtree(part);
    EXPECT_EQ(f.max_depth(), 2);
    const auto s = depth_stats(f);
    EXPECT_EQ(s.min_depth, 2.0);
    EXPECT_EQ(s.var_depth, 0.0);
    for (const Vec3& q : random_points(kUnit, 1000, 1)) EXPECT_EQ(f.lookup(q), lookup_linear(part, q));
}

TEST(KdTree, SplitValueTakesRightBranch) {
    const auto part = split_at(0.625);
    const auto f = build_kdtree(part);
    EXPECT_EQ(f.lookup({0.625, 0.5, 0.5}), 1u);
    EXPECT_EQ(f.lookup_packed({0.625, 0.5, 0.5}), 1u);
    EXPECT_EQ(f.lookup({std::nextafter(0.625, 0.0), 0.5, 0.5}), 0u);
}

TEST(KdTree, SingleElementIsADirectRoot) {
    const auto f = build_kdtree(grid_partition(1, 1, 1));
    EXPECT_TRUE(f.nodes.empty());
    EXPECT_EQ(f.lookup({0.1, 0.2, 0.3}), 0u);
    EXPECT_EQ(f.lookup({1, 1, 1}), 0u);
}

TEST(KdTree, OutsideDomainIsNotFound) {
    const auto f = build_kdtree(grid_partition(2, 2, 2));
    EXPECT_EQ(f.lookup({1.5, 0.5, 0.5}), kNoElement);
    EXPECT_EQ(f.lookup_packed({-0.5, 0.5, 0.5}), kNoElement);
}

TEST(KdTree, OverlappingBoxesAreAStructureError) {
    Partition p;
    p.domain = kUnit;
    p.boxes = {kUnit, kUnit};
    EXPECT_THROW(build_kdtree(p), StructureError);
}

TEST(KdTree, CyclicNodesHitTraversalLimit) {
    auto f = build_kdtree(split_at(0.5));
    f.nodes[0].word_r = make_internal(0, 0);  // left child points at itself
    f.splits[0] = 2.0;
    EXPECT_THROW(f.lookup({0.25, 0.5, 0.5}), StructureError);
}

TEST(KdTree, DepthBalanceBound) {
    for (const auto& [name, part] : test_partitions()) {
        const auto f = build_kdtree(part);
        const int bound = 2 * static_cast<int>(std::ceil(std::log2(double(part.size())))) + 8;
        EXPECT_LE(f.max_depth(), bound) << name << " N=" << part.size();
    }
}

TEST(KdForest, OneBlockEqualsSingleTree) {
    const auto part = Partition::from(testing::dyadic_dataset(1, 3));
    const auto a = build_kdforest(part, {1, 1, 1});
    const auto b = build_kdtree(part);
    EXPECT_EQ(a.roots, b.roots);
    EXPECT_EQ(a.nodes, b.nodes);
}

TEST(KdForest, AlignedGridIsAllDirect) {
    const auto part = grid_partition(4, 4, 4);
    const auto f = build_kdforest(part, {4, 4, 4});
    EXPECT_TRUE(f.nodes.empty());
    for (auto w : f.roots) EXPECT_TRUE(is_leaf(w));
    const auto s = depth_stats(f);
    EXPECT_EQ(s.min_depth, 0.0);
    EXPECT_EQ(s.max_depth, 0.0);
    EXPECT_EQ(s.mean_depth, 0.0);
    EXPECT_EQ(s.var_depth, 0.0);
    EXPECT_EQ(f.lookup({0.3, 0.6, 0.9}), lookup_linear(part, {0.3, 0.6, 0.9}));
}

TEST(KdForest, NodeInvariantsHold) {
    const auto part = Partition::from(testing::dyadic_dataset(2, 3));
    const auto f = build_kdforest(part, {8, 8, 8});
    ASSERT_EQ(f.nodes.size(), f.splits.size());
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
        const auto w = f.nodes[i].word_r;
        if (is_leaf(w)) {
            EXPECT_LT(payload_of(w), part.size());
        } else {
            EXPECT_LE(axis_of(w), 2);
            EXPECT_GT(payload_of(w), i + 1);  // left subtree follows the right one
            EXPECT_LT(payload_of(w), f.nodes.size());
            EXPECT_EQ(f.nodes[i].split_g, static_cast<float>(f.splits[i]));
        }
    }
}

TEST(KdForest, MeanDepthDecreasesWithGridRefinement) {
    const auto part = Partition::from(testing::dyadic_dataset(2, 3));
    double prev = INFINITY;
    for (int g : {1, 8, 64}) {
        const auto s = depth_stats(build_kdforest(part, {g, g, g}));
        EXPECT_LE(s.min_depth, s.mean_depth);
        EXPECT_LE(s.mean_depth, s.max_depth);
        EXPECT_GE(s.var_depth, 0.0);
        EXPECT_LT(s.mean_depth, prev) << "grid " << g;
        prev = s.mean_depth;
    }
    EXPECT_EQ(prev, 0.0);
}

TEST(KdForest, StepCountBoundedByBlockDepth) {
    const auto part = Partition::from(testing::nondyadic_dataset(2));
    const auto f = build_kdforest(part, {3, 3, 3});
    for (const Vec3& q : random_points(kUnit, 5000, 7)) {
        int steps = 0;
        f.lookup_counted(q, steps);
        ASSERT_LE(steps, f.block_depth[f.block_index(q)]);
    }
}

TEST(KdForest, DefaultGrid) {
    EXPECT_EQ(default_forest_grid(1), 1);
    EXPECT_EQ(default_forest_grid(1000), 10);
    EXPECT_EQ(default_forest_grid(std::size_t{1} << 30), 512);
}

class OracleEquivalence : public ::testing::TestWithParam<int> {};

TEST_P(OracleEquivalence, ForestAgreesWithLinearScan) {
    const int g = GetParam();
    for (const auto& [name, part] : test_partitions()) {
        const auto f = build_kdforest(part, {g, g, g});
        for (const Vec3& q : random_points(part.domain, 20000, 11)) ASSERT_EQ(f.lookup(q), lookup_linear(part, q)) << name;
        for (const Vec3& q : boundary_points(part, 5000, 12)) ASSERT_EQ(f.lookup(q), lookup_linear(part, q)) << name;
    }
}

TEST_P(OracleEquivalence, PackedTraversalAgreesOnDyadicData) {
    // Dyadic boundaries are exact in float, so the 32-bit traversal is exact too.
    const int g = GetParam();
    const auto part = Partition::from(testing::dyadic_dataset(2, 3));
    const auto f = build_kdforest(part, {g, g, g});
    for (const Vec3& q : random_points(part.domain, 20000, 13)) {
        const Vec3 qf = Vec3(Vec3f(q));
        ASSERT_EQ(f.lookup_packed(q), lookup_linear(part, qf));
    }
}

INSTANTIATE_TEST_SUITE_P(Grids, OracleEquivalence, ::testing::Values(1, 2, 8, 64));

// --- benchmark helpers ----------------------------------------------------------

TEST(Bench, PointsAreDeterministic) {
    EXPECT_EQ(random_points(kUnit, 100, 9), random_points(kUnit, 100, 9));
    EXPECT_NE(random_points(kUnit, 100, 9), random_points(kUnit, 100, 10));
    const auto part = grid_partition(3, 3, 3);
    for (const Vec3& q : boundary_points(part, 1000, 1)) EXPECT_TRUE(in_domain(part.domain, q));
}

TEST(Bench, KdTreeBeatsLinearScan) {
    const auto part = Partition::from(testing::dyadic_dataset(2, 3));
    ASSERT_GE(part.size(), 4000u);
    const auto tree = build_kdtree(part);
    const auto pts = random_points(kUnit, 2000, 1);
    const auto lin = measure_throughput("linear", pts, 3, [&](const Vec3& p) { return lookup_linear(part, p); });
    const auto kd = measure_throughput("kdtree", pts, 3, [&](const Vec3& p) { return tree.lookup(p); });
    EXPECT_EQ(lin.checksum, kd.checksum);
    EXPECT_GT(kd.lookups_per_second, lin.lookups_per_second);
}

// --- field evaluator --------------------------------------------------------------

TEST(FieldEvaluator, MatchesDirectEvaluation) {
    const auto vol = testing::dyadic_dataset(2, 2);
    const FieldEvaluator ev(vol);
    for (const Vec3& q : random_points(vol.domain, 500, 3)) {
        double v;
        ASSERT_TRUE(ev.eval(q, {&v, 1}));
        const auto e = lookup_linear(ev.partition(), q);
        EXPECT_NEAR(v, lr::eval_lr(vol, e, q)[0], 1e-9);
        float vf;
        ASSERT_TRUE(ev.eval_f32(Vec3f(q), {&vf, 1}));
        EXPECT_NEAR(vf, v, 1e-4);
    }
    double v = 42.0;
    EXPECT_FALSE(ev.eval({2.0, 0.5, 0.5}, {&v, 1}));
    EXPECT_EQ(v, 42.0);
}

TEST(FieldEvaluator, LocalStepFollowsElementSize) {
    const auto vol = testing::dyadic_dataset(2, 3);
    const FieldEvaluator ev(vol);
    const Box3& b = ev.partition().boxes[0];
    const Vec3 ext = b.extent();
    EXPECT_DOUBLE_EQ(ev.local_step(0), std::min({ext[0], ext[1], ext[2]}) / 4.0);
    EXPECT_DOUBLE_EQ(ev.min_element_side(), 1.0 / 64.0);
}

}  // namespace
}  // namespace lrvis::accel
