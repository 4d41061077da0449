// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lrvis/flow/field.hpp"
#include "lrvis/flow/tableau.hpp"

namespace lrvis::flow {

/// Mixed keeps the state in double and evaluates the field through the 32-bit
/// path. Double is an all-64-bit path used for reference runs.
enum class Precision { Single, Mixed, Double };
enum class StepMode { Fixed, Embedded, Heuristic };
enum class Termination { ExitedDomain, TimeReached, MaxSamples, StepUnderflow };

const char* to_string(Precision p);
const char* to_string(StepMode m);
const char* to_string(Termination t);
Precision precision_from_string(const std::string& s);
StepMode step_mode_from_string(const std::string& s);
Termination termination_from_string(const std::string& s);

struct IntegratorConfig {
    std::string method = "RK4";
    StepMode mode = StepMode::Fixed;
    double h0 = 0.01;  // fixed step, heuristic scale, or initial embedded step
    double tol = 1e-5;
    double t_max = 1.0;
    std::size_t max_samples = 10000;
    Precision precision = Precision::Mixed;

    /// Throws ValidationError on unknown methods, non-positive parameters,
    /// or an embedded mode paired with a method that has no error estimate.
    void validate() const;
};

struct Sample {
    double t = 0.0;
    Vec3 x;
};

struct Streamline {
    Vec3 seed;
    std::vector<Sample> samples;
    Termination termination = Termination::TimeReached;
    std::size_t field_evals = 0;
};

struct StepResult {
    Vec3 x_next;
    Vec3 x_low;  // embedded solution, equals x_next without b_hat
    bool exited = false;  // some stage query was clamped to the boundary
    int evals = 0;
};

/// One explicit RK step. Throws NumericError on a non-finite field value.
StepResult rk_step(const VectorField& field, const ButcherTableau& tab, const Vec3& x, double h, Precision precision);

/// Throws ValidationError when the seed is outside the domain.
Streamline integrate(const VectorField& field, const Vec3& seed, const IntegratorConfig& config);

/// Seeds are checked up front; the error names the first bad seed index.
/// Output order follows seed order for any worker count.
std::vector<Streamline> integrate_all(const VectorField& field, const std::vector<Vec3>& seeds,
                                      const IntegratorConfig& config, unsigned workers = 1);

std::size_t total_field_evals(const std::vector<Streamline>& lines);

}  // namespace lrvis::flow
