// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lrvis/flow/metric.hpp"

namespace lrvis::flow {

/// One method swept over a parameter: tolerances for embedded mode, base
/// steps for fixed and heuristic mode.
struct SweepRun {
    std::string method;
    StepMode mode = StepMode::Fixed;
    std::vector<double> params;
};

struct ExperimentConfig {
    std::vector<SweepRun> runs;
    double t_max = 1.0;
    std::size_t max_samples = 1000000;
    Precision precision = Precision::Mixed;
    double initial_step = 0.0;  // embedded start step; 0: min element side
    unsigned workers = 1;
};

struct ExperimentRow {
    std::string method;
    StepMode mode = StepMode::Fixed;
    double param = 0.0;
    std::size_t field_evals = 0;
    double error = 0.0;
};

/// Rows follow run order, then parameter order.
std::vector<ExperimentRow> efficiency_experiment(const VectorField& field, const std::vector<Vec3>& seeds,
                                                 const std::vector<Streamline>& reference,
                                                 const ExperimentConfig& config);

/// Header `method,mode,param,field_evals,error`.
void write_experiment_csv(std::ostream& os, const std::vector<ExperimentRow>& rows);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace lrvis::flow
