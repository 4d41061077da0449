// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lrvis/flow/experiment.hpp"

namespace lrvis::testing {

/// f = (-y, x, 0) on [-2, 2]^3.
flow::AnalyticVectorField rotational_field();

/// Rigid rotation of `seed` about the z axis by angle t.
Vec3 rotate_about_z(const Vec3& seed, const Vec3& center, double t);

struct ConvergenceReport {
    std::vector<double> steps;
    std::vector<double> errors;
    double slope = 0.0;
};

/// One period from (1, 0, 0) at h = 2pi / 2^k for k = k_lo..k_hi, error
/// against the exact circle.
ConvergenceReport rk_convergence(const std::string& method, flow::Precision precision, int k_lo = 4, int k_hi = 9);

struct SweepReport {
    std::vector<double> params;
    std::vector<double> errors;
    std::vector<std::size_t> evals;
};

/// Embedded method on the rotational field, tol = 1e-2 .. 1e-6, one period,
/// three seeds, error against the exact circles.
SweepReport tolerance_sweep(const std::string& method);

/// Heuristic mode on the dyadic multiscale vortex dataset with base scales
/// 8, 4, 2, 1, 0.5, error against the RKF5 reference.
SweepReport heuristic_sweep(const std::string& method);

struct PrecisionReport {
    double min_side = 0.0;
    std::vector<double> steps;
    std::vector<double> mixed;
    std::vector<double> single;
};

/// Rotation about the refinement focus of a dyadic dataset with 13 levels
/// (finest side 2^-16), circles of radius 4 finest sides, RK4 at
/// h = 2pi / n for n = 32 .. 1024.
PrecisionReport precision_study();

}  // namespace lrvis::testing
