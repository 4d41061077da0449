// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "datasets.hpp"
#include "lrvis/accel/partition.hpp"
#include "lrvis/core/error.hpp"
#include "lrvis/io/refine.hpp"
#include "lrvis/lr/bezier.hpp"
#include "lrvis/lr/bspline.hpp"
#include "lrvis/lr/validate.hpp"
#include "lrvis/lr/volume.hpp"
#include "oracles.hpp"

namespace lrvis {
namespace {

using testing::oracle_bspline;

lr::LRSplineVolume single_element(int degree, double coef = 1.0) {
    std::array<std::vector<double>, 3> breaks{{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}};
    auto vol = io::tensor_volume({{degree, degree, degree}}, breaks, 1);
    for (auto& f : vol.bsplines) f.coef = {coef};
    return vol;
}

double coef_range(const lr::LRSplineVolume& vol) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& f : vol.bsplines)
        for (double c : f.coef) {
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
    return hi - lo;
}

double max_abs_coef(const lr::LRSplineVolume& vol) {
    double m = 0.0;
    for (const auto& f : vol.bsplines)
        for (double c : f.coef) m = std::max(m, std::abs(c));
    return m;
}

Vec3 random_in(const Box3& b, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec3 p;
    for (int a = 0; a < 3; ++a) p[a] = b.lo[a] + u(rng) * (b.hi[a] - b.lo[a]);
    return p;
}

// --- univariate B-splines -------------------------------------------------

TEST(BSpline1D, ConstantOnSupport) {
    const std::vector<double> k{0.0, 1.0};
    EXPECT_DOUBLE_EQ(lr::eval_bspline_1d(k, 0, 0.5), 1.0);
}

TEST(BSpline1D, HatPeak) {
    const std::vector<double> k{0.0, 0.5, 1.0};
    EXPECT_DOUBLE_EQ(lr::eval_bspline_1d(k, 1, 0.5), 1.0);
}

TEST(BSpline1D, QuadraticUniformMatchesOracle) {
    const std::vector<double> k{0.0, 1.0, 2.0, 3.0};
    const double expected = oracle_bspline(k, 2, 1.5);
    EXPECT_DOUBLE_EQ(expected, 0.75);
    EXPECT_NEAR(lr::eval_bspline_1d(k, 2, 1.5), expected, 1e-15);
}

TEST(BSpline1D, ZeroOutsideHalfOpenSupport) {
    const std::vector<double> k{0.0, 1.0, 2.0, 3.0};
    EXPECT_EQ(lr::eval_bspline_1d(k, 2, -0.1), 0.0);
    EXPECT_EQ(lr::eval_bspline_1d(k, 2, 3.0), 0.0);
    EXPECT_EQ(lr::eval_bspline_1d(k, 2, 3.5), 0.0);
}

TEST(BSpline1D, ClosedAtDomainMaximum) {
    const std::vector<double> k{0.0, 1.0, 1.0};
    EXPECT_EQ(lr::eval_bspline_1d(k, 1, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(lr::eval_bspline_1d(k, 1, 1.0, 1.0), 1.0);
}

TEST(BSpline1D, RandomKnotsAgreeWithRecursiveOracle) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int p = trial % 6;
        std::vector<double> k(p + 2);
        for (auto& x : k) x = std::round(u(rng) * 8.0) / 8.0;  // repeated knots happen
        std::sort(k.begin(), k.end());
        if (!(k.front() < k.back())) continue;
        for (int s = 0; s < 20; ++s) {
            const double x = -0.1 + 1.2 * u(rng);
            EXPECT_NEAR(lr::eval_bspline_1d(k, p, x), oracle_bspline(k, p, x), 1e-13);
        }
    }
}

// --- validation -----------------------------------------------------------

TEST(Validate, SingleElementIsClean) {
    const auto report = lr::validate(single_element(2));
    EXPECT_TRUE(report.ok()) << report.summary();
    EXPECT_EQ(report.summary(), "OK");
}

TEST(Validate, OverlapIsReported) {
    auto vol = single_element(0);
    vol.elements = {{{{0, 0, 0}, {0.6, 1, 1}}, {}}, {{{0.4, 0, 0}, {1, 1, 1}}, {}}};
    const auto report = lr::validate(vol);
    ASSERT_TRUE(report.has(lr::IssueKind::Overlap)) << report.summary();
    const auto it = std::find_if(report.issues.begin(), report.issues.end(),
                                 [](const lr::Issue& i) { return i.kind == lr::IssueKind::Overlap; });
    EXPECT_EQ(it->indices, (std::vector<std::size_t>{0, 1}));
}

TEST(Validate, CoverageGapIsReported) {
    auto vol = single_element(0);
    vol.elements = {{{{0, 0, 0}, {0.5, 1, 1}}, {}}};
    EXPECT_TRUE(lr::validate(vol).has(lr::IssueKind::CoverageGap));
}

TEST(Validate, DegenerateElementIsRejected) {
    auto vol = single_element(0);
    vol.elements = {{{{0, 0, 0}, {0, 1, 1}}, {}}, {{{0, 0, 0}, {1, 1, 1}}, {}}};
    EXPECT_TRUE(lr::validate(vol).has(lr::IssueKind::DegenerateElement));
}

TEST(Validate, ScaledGammaResidualEqualsBasisValue) {
    auto vol = testing::uniform_dataset(2, 1);
    const std::size_t victim = 13;  // the interior tensor function
    vol.bsplines[victim].gamma *= 2.0;
    const auto report = lr::validate(vol);
    ASSERT_TRUE(report.has(lr::IssueKind::PartitionOfUnity));
    double expected = 0.0;
    for (const auto& e : vol.elements) {
        const Vec3 c = e.box.center();
        double w = 1.0;
        for (int a = 0; a < 3; ++a) w *= oracle_bspline(vol.bsplines[victim].knots[a], 2, c[a]);
        expected = std::max(expected, w);
    }
    EXPECT_NEAR(report.max_pou_residual, expected, 1e-12);
}

TEST(Validate, DecreasingKnotsNameTheFunction) {
    auto vol = single_element(1);
    vol.bsplines[5].knots[1] = {1.0, 0.0, 1.0};
    const auto report = lr::validate(vol);
    ASSERT_TRUE(report.has(lr::IssueKind::BadKnots));
    EXPECT_EQ(report.issues.front().indices, (std::vector<std::size_t>{5}));
    EXPECT_NE(report.summary().find("B-spline 5"), std::string::npos);
}

TEST(Validate, GeneratedDatasetsAreClean) {
    for (int p : {1, 2, 3})
        for (const auto& d : testing::standard_datasets(p)) {
            const auto report = lr::validate(d.vol);
            EXPECT_TRUE(report.ok()) << d.name << ": " << report.summary();
            EXPECT_LE(report.max_pou_residual, lr::kPartitionOfUnityTolerance) << d.name;
        }
}

// --- supports and elements -------------------------------------------------

TEST(BindSupports, SingleFunctionSingleElement) {
    auto vol = single_element(0);
    vol = lr::bind_supports(vol);
    ASSERT_EQ(vol.elements.size(), 1u);
    EXPECT_EQ(vol.elements[0].supports, (std::vector<std::uint32_t>{0}));
}

TEST(BindSupports, MatchesBruteForceContainment) {
    const auto vol = testing::dyadic_dataset(2, 3);
    for (std::size_t e = 0; e < vol.elements.size(); ++e) {
        std::vector<std::uint32_t> brute;
        for (std::size_t i = 0; i < vol.bsplines.size(); ++i)
            if (vol.bsplines[i].support().contains(vol.elements[e].box)) brute.push_back(static_cast<std::uint32_t>(i));
        ASSERT_EQ(vol.elements[e].supports, brute) << "element " << e;
    }
}

TEST(BindSupports, UnsupportedElementThrows) {
    auto vol = single_element(0);
    vol.bsplines[0].knots[0] = {0.0, 0.5};
    vol.elements = {{{{0, 0, 0}, {0.5, 1, 1}}, {}}, {{{0.5, 0, 0}, {1, 1, 1}}, {}}};
    try {
        lr::bind_supports(vol);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("element 1"), std::string::npos) << e.what();
    }
}

TEST(DeriveElements, TensorPatchGivesEightBoxes) {
    std::array<std::vector<double>, 3> breaks{{{0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}}};
    auto vol = io::tensor_volume({{1, 1, 1}}, breaks, 1);
    EXPECT_EQ(lr::derive_elements(vol).size(), 8u);
}

TEST(DeriveElements, SingleIntervalGivesOneBox) { EXPECT_EQ(lr::derive_elements(single_element(2)).size(), 1u); }

TEST(DeriveElements, MixedLocalKnotsCountIsProductOfUniqueIntervals) {
    const auto vol = testing::dyadic_dataset(2, 2);
    std::array<std::size_t, 3> unique{};
    for (int a = 0; a < 3; ++a) {
        std::vector<double> v{vol.domain.lo[a], vol.domain.hi[a]};
        for (const auto& f : vol.bsplines) v.insert(v.end(), f.knots[a].begin(), f.knots[a].end());
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        unique[a] = v.size() - 1;
    }
    const auto els = lr::derive_elements(vol);
    EXPECT_EQ(els.size(), unique[0] * unique[1] * unique[2]);
}

TEST(DeriveElements, OutputIsABoxPartition) {
    auto vol = testing::dyadic_dataset(2, 2);
    vol.elements = lr::derive_elements(vol);
    double total = 0.0;
    for (const auto& e : vol.elements) total += e.box.volume();
    EXPECT_NEAR(total, vol.domain.volume(), 1e-12 * vol.domain.volume());
    const auto report = lr::validate(vol);
    EXPECT_FALSE(report.has(lr::IssueKind::Overlap));
    EXPECT_FALSE(report.has(lr::IssueKind::CoverageGap));
    EXPECT_TRUE(report.ok()) << report.summary();
}

// --- LR evaluation -----------------------------------------------------------

TEST(EvalLR, ConstantField) {
    auto vol = testing::dyadic_dataset(2, 2);
    for (auto& f : vol.bsplines) f.coef = {3.25};
    std::mt19937_64 rng(1);
    for (std::size_t e = 0; e < vol.elements.size(); e += 7)
        EXPECT_NEAR(lr::eval_lr(vol, e, random_in(vol.elements[e].box, rng))[0], 3.25, 1e-12);
}

TEST(EvalLR, TrilinearCenterIsMeanOfCorners) {
    auto vol = lr::bind_supports(single_element(1));
    double sum = 0.0;
    for (std::size_t i = 0; i < vol.bsplines.size(); ++i) {
        vol.bsplines[i].coef = {static_cast<double>(i)};
        sum += static_cast<double>(i);
    }
    EXPECT_NEAR(lr::eval_lr(vol, 0, {0.5, 0.5, 0.5})[0], sum / 8.0, 1e-15);
}

TEST(EvalLR, MatchesIndependentSumOverAllFunctions) {
    const auto vol = testing::dyadic_dataset(2, 3);
    std::mt19937_64 rng(2);
    for (std::size_t e = 0; e < vol.elements.size(); e += 11) {
        const Vec3 p = random_in(vol.elements[e].box, rng);
        const double got = lr::eval_lr(vol, e, p)[0];
        const double want = testing::oracle_eval(vol, p, p)[0];
        EXPECT_NEAR(got, want, 1e-12 * (1.0 + std::abs(want))) << "element " << e;
    }
}

TEST(EvalLR, BadElementIndexThrows) {
    const auto vol = lr::bind_supports(single_element(1));
    EXPECT_THROW(lr::eval_lr(vol, 1, {0.5, 0.5, 0.5}), Error);
}

TEST(EvalLR, GeneratorReproducesAffineFieldsExactly) {
    AnalyticField ramp;
    ramp.kind = AnalyticKind::Ramp;
    for (int p : {1, 2, 3}) {
        const auto vol = testing::dyadic_dataset(p, 3, ramp);
        std::mt19937_64 rng(3);
        for (std::size_t e = 0; e < vol.elements.size(); e += 5) {
            const Vec3 x = random_in(vol.elements[e].box, rng);
            EXPECT_NEAR(lr::eval_lr(vol, e, x)[0], ramp.eval(x)[0], 1e-12) << "p=" << p << " element " << e;
        }
    }
}

TEST(Refiner, PreservesTheRepresentedField) {
    auto vol = testing::uniform_dataset(2, 2);
    io::LRRefiner r(vol);
    r.refine_bsplines(r.supporting({{0, 0, 0}, {0.25, 0.25, 0.25}}));
    r.refine_bsplines(r.supporting({{0, 0, 0}, {0.125, 0.125, 0.125}}));
    const auto refined = r.volume();
    EXPECT_GT(refined.elements.size(), vol.elements.size());
    EXPECT_TRUE(lr::validate(refined).ok());
    const auto part = accel::Partition::from(vol);
    std::mt19937_64 rng(4);
    for (std::size_t e = 0; e < refined.elements.size(); e += 3) {
        const Vec3 p = random_in(refined.elements[e].box, rng);
        const auto coarse_e = accel::lookup_linear(part, p);
        EXPECT_NEAR(lr::eval_lr(refined, e, p)[0], lr::eval_lr(vol, coarse_e, p)[0], 1e-12);
    }
}

// --- Bezier extraction -------------------------------------------------------

TEST(ToBezier, ConstantFieldGivesConstantCoefficients) {
    auto vol = testing::dyadic_dataset(3, 1);
    for (auto& f : vol.bsplines) f.coef = {-2.5};
    const auto block = lr::to_bezier(vol, 17);
    for (double c : block.coef) EXPECT_NEAR(c, -2.5, 1e-12);
}

TEST(ToBezier, TrilinearCoefficientsAreCornerValues) {
    auto vol = testing::uniform_dataset(1, 1);
    for (std::size_t i = 0; i < vol.bsplines.size(); ++i) vol.bsplines[i].coef = {std::sin(1.0 + i)};
    for (std::size_t e = 0; e < vol.elements.size(); ++e) {
        const auto block = lr::to_bezier(vol, e);
        const Box3& b = vol.elements[e].box;
        for (int k = 0; k < 2; ++k)
            for (int j = 0; j < 2; ++j)
                for (int i = 0; i < 2; ++i) {
                    const Vec3 corner{i ? b.hi[0] : b.lo[0], j ? b.hi[1] : b.lo[1], k ? b.hi[2] : b.lo[2]};
                    EXPECT_NEAR(block.coef[(k * 2 + j) * 2 + i], lr::eval_lr(vol, e, corner)[0], 1e-14);
                }
    }
}

TEST(ToBezier, QuadraticRandomElementReproducesLR) {
    for (unsigned seed = 0; seed < 5; ++seed) {
        const auto vol = testing::random_patch(2, seed);
        const auto block = lr::to_bezier(vol, 0);
        std::mt19937_64 rng(seed);
        for (int s = 0; s < 100; ++s) {
            const Vec3 p = random_in(vol.elements[0].box, rng);
            const double want = lr::eval_lr(vol, 0, p)[0];
            EXPECT_NEAR(lr::eval_bezier_scalar(block, p), want, 1e-9 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST(ToBezier, VectorValuedComponentsAreIndependent) {
    const auto vol = testing::random_patch(3, 11, 3);
    const auto block = lr::to_bezier(vol, 0);
    std::vector<double> v(3);
    lr::eval_bezier<double>(block, {0.3, 0.7, 0.2}, v);
    const auto want = lr::eval_lr(vol, 0, {0.3, 0.7, 0.2});
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(v[c], want[c], 1e-12);
}

// --- Bezier evaluation -------------------------------------------------------

lr::BezierBlock make_block(int p, const Box3& box, std::vector<double> coef) {
    lr::BezierBlock b;
    b.lo = box.lo;
    b.hi = box.hi;
    b.degrees = {{p, p, p}};
    b.coef = std::move(coef);
    return b;
}

TEST(EvalBezier, LinearMidpoint) {
    lr::BezierBlock b;
    b.lo = {0, 0, 0};
    b.hi = {1, 1, 1};
    b.degrees = {{1, 0, 0}};
    b.coef = {0.0, 1.0};
    EXPECT_DOUBLE_EQ(lr::eval_bezier_scalar(b, {0.5, 0.3, 0.9}), 0.5);
}

TEST(EvalBezier, ConstantCoefficients) {
    const auto b = make_block(3, {{0, 0, 0}, {2, 1, 1}}, std::vector<double>(64, 4.5));
    std::mt19937_64 rng(5);
    for (int s = 0; s < 50; ++s) EXPECT_NEAR(lr::eval_bezier_scalar(b, random_in(b.box(), rng)), 4.5, 1e-13);
}

TEST(EvalBezier, MatchesDirectBernsteinSum) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> coef(27);
    for (auto& c : coef) c = u(rng);
    const Box3 box{{0.25, -1.0, 2.0}, {0.75, 0.5, 2.125}};
    const auto b = make_block(2, box, coef);
    for (int s = 0; s < 100; ++s) {
        const Vec3 p = random_in(box, rng);
        Vec3 t;
        for (int a = 0; a < 3; ++a) t[a] = (p[a] - box.lo[a]) / (box.hi[a] - box.lo[a]);
        EXPECT_NEAR(lr::eval_bezier_scalar(b, p), testing::oracle_bernstein_sum(coef, b.degrees, t), 1e-12);
    }
}

TEST(EvalBezier, FloatPathTracksDoublePath) {
    const auto vol = testing::random_patch(3, 21);
    const auto bv = lr::to_bezier_volume(vol);
    const auto bf = lr::to_single(bv);
    std::mt19937_64 rng(8);
    for (int s = 0; s < 100; ++s) {
        const Vec3 p = random_in(vol.domain, rng);
        float out;
        lr::eval_bezier<float>(bf.blocks[0], Vec3f(p), std::span<float>(&out, 1));
        EXPECT_NEAR(out, lr::eval_bezier_scalar(bv.blocks[0], p), 1e-5);
    }
}

// --- gradients ----------------------------------------------------------------

TEST(EvalBezierGradient, LinearInX) {
    lr::BezierBlock b;
    b.lo = {0, 0, 0};
    b.hi = {1, 1, 1};
    b.degrees = {{1, 1, 1}};
    b.coef = {0, 1, 0, 1, 0, 1, 0, 1};
    double v, g[3];
    lr::eval_bezier_gradient<double>(b, {0.3, 0.6, 0.2}, std::span<double>(&v, 1), g);
    EXPECT_NEAR(v, 0.3, 1e-15);
    EXPECT_NEAR(g[0], 1.0, 1e-15);
    EXPECT_NEAR(g[1], 0.0, 1e-15);
    EXPECT_NEAR(g[2], 0.0, 1e-15);
}

TEST(EvalBezierGradient, ConstantBlockHasZeroGradient) {
    const auto b = make_block(2, {{0, 0, 0}, {1, 1, 1}}, std::vector<double>(27, 7.0));
    double v, g[3];
    lr::eval_bezier_gradient<double>(b, {0.1, 0.9, 0.4}, std::span<double>(&v, 1), g);
    for (double x : g) EXPECT_NEAR(x, 0.0, 1e-13);
}

TEST(EvalBezierGradient, MatchesCentralDifferences) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> coef(27);
        for (auto& c : coef) c = u(rng);
        const Box3 box{{0.0, 0.0, 0.0}, {0.5, 2.0, 1.0}};
        const auto b = make_block(2, box, coef);
        const Box3 inner{{0.05, 0.2, 0.1}, {0.45, 1.8, 0.9}};
        const Vec3 p = random_in(inner, rng);
        double v, g[3];
        lr::eval_bezier_gradient<double>(b, p, std::span<double>(&v, 1), g);
        const double h = 1e-5;
        for (int a = 0; a < 3; ++a) {
            Vec3 pp = p, pm = p;
            pp[a] += h;
            pm[a] -= h;
            const double fd = (lr::eval_bezier_scalar(b, pp) - lr::eval_bezier_scalar(b, pm)) / (2 * h);
            EXPECT_NEAR(g[a], fd, 1e-4 * std::max(1.0, std::abs(fd))) << "axis " << a;
        }
    }
}

// --- invariants over generated datasets -------------------------------------

class DatasetInvariants : public ::testing::TestWithParam<int> {};

TEST_P(DatasetInvariants, PartitionOfUnityAtElementCenters) {
    for (const auto& d : testing::standard_datasets(GetParam()))
        for (std::size_t e = 0; e < d.vol.elements.size(); ++e)
            ASSERT_NEAR(lr::basis_sum(d.vol, e, d.vol.elements[e].box.center()), 1.0, 1e-9) << d.name;
}

TEST_P(DatasetInvariants, ExtractionIsExact) {
    for (const auto& d : testing::standard_datasets(GetParam())) {
        const auto bv = lr::to_bezier_volume(d.vol);
        const double bound = 1e-9 * (max_abs_coef(d.vol) + 1.0);
        std::mt19937_64 rng(10);
        double worst = 0.0;
        const std::size_t stride = std::max<std::size_t>(1, d.vol.elements.size() / 200);
        for (std::size_t e = 0; e < d.vol.elements.size(); e += stride)
            for (int s = 0; s < 100; ++s) {
                const Vec3 p = random_in(d.vol.elements[e].box, rng);
                worst = std::max(worst, std::abs(lr::eval_bezier_scalar(bv.blocks[e], p) - lr::eval_lr(d.vol, e, p)[0]));
            }
        EXPECT_LE(worst, bound) << d.name;
    }
}

TEST_P(DatasetInvariants, ContinuityAcrossFaces) {
    for (const auto& d : testing::standard_datasets(GetParam())) {
        const auto bv = lr::to_bezier_volume(d.vol);
        const auto part = accel::Partition::from(d.vol);
        const double tol = 1e-7 * coef_range(d.vol);
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<std::size_t> pick(0, part.size() - 1);
        int checked = 0;
        while (checked < 1000) {
            const std::size_t e = pick(rng);
            const int axis = static_cast<int>(rng() % 3);
            const Box3& b = part.boxes[e];
            if (b.hi[axis] == d.vol.domain.hi[axis]) continue;
            Vec3 q = random_in(b, rng);
            q[axis] = b.hi[axis];
            // q lies on the upper face of e; the half-open lookup puts it in
            // the neighbour across that face.
            const auto n = accel::lookup_linear(part, q);
            ASSERT_NE(n, e);
            const double fa = lr::eval_bezier_scalar(bv.blocks[e], q);
            const double fb = lr::eval_bezier_scalar(bv.blocks[n], q);
            EXPECT_NEAR(fa, fb, tol) << d.name;
            ++checked;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Degrees, DatasetInvariants, ::testing::Values(1, 2, 3));

}  // namespace
}  // namespace lrvis
