// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/flow/experiment.hpp"

#include <cmath>
#include <ostream>

#include "lrvis/core/error.hpp"

namespace lrvis::flow {

std::vector<ExperimentRow> efficiency_experiment(const VectorField& field, const std::vector<Vec3>& seeds,
                                                 const std::vector<Streamline>& reference,
                                                 const ExperimentConfig& config) {
    std::vector<ExperimentRow> rows;
    for (const SweepRun& run : config.runs) {
        for (double param : run.params) {
            IntegratorConfig cfg;
            cfg.method = run.method;
            cfg.mode = run.mode;
            cfg.t_max = config.t_max;
            cfg.max_samples = config.max_samples;
            cfg.precision = config.precision;
            if (run.mode == StepMode::Embedded) {
                cfg.tol = param;
                cfg.h0 = config.initial_step > 0.0 ? config.initial_step : field.min_element_side();
            } else {
                cfg.h0 = param;
            }
            const auto lines = integrate_all(field, seeds, cfg, config.workers);
            rows.push_back({run.method, run.mode, param, total_field_evals(lines), error_metric(lines, reference)});
        }
    }
    return rows;
}

void write_experiment_csv(std::ostream& os, const std::vector<ExperimentRow>& rows) {
    const auto old = os.precision(10);
    os << "method,mode,param,field_evals,error\n";
    for (const auto& r : rows)
        os << r.method << ',' << to_string(r.mode) << ',' << r.param << ',' << r.field_evals << ',' << r.error << '\n';
    os.precision(old);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("slope needs at least two matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("slope needs positive values");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace lrvis::flow
