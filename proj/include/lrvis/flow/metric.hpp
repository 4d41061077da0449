// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lrvis/flow/integrate.hpp"

namespace lrvis::flow {

/// Position on the polyline at time t, linear between samples and clamped
/// to the first and last sample outside its time range.
Vec3 position_at(const Streamline& line, double t);

/// Sum over samples i >= 1 of (t_i - t_{i-1}) * |x(t_i) - y(t_i)|, where
/// y is the reference resampled at the approximation's times.
double streamline_error(const Streamline& approx, const Streamline& reference);

/// Maximum of streamline_error over the set. Throws ValidationError when
/// the sets differ in size or seeds.
double error_metric(const std::vector<Streamline>& approx, const std::vector<Streamline>& reference);

/// Exact reference given as a function of (streamline index, t).
using ExactSolution = std::function<Vec3(std::size_t, double)>;
double error_metric(const std::vector<Streamline>& approx, const ExactSolution& exact);

struct ReferenceOptions {
    std::optional<double> h;   // default: min element side / 64
    Precision precision = Precision::Mixed;
    unsigned workers = 1;
};

/// RKF5 at a small fixed step, enough samples to reach t_max.
std::vector<Streamline> reference_solution(const VectorField& field, const std::vector<Vec3>& seeds, double t_max,
                                           const ReferenceOptions& options = {});

}  // namespace lrvis::flow
