// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "datasets.hpp"

#include <random>

#include "lrvis/io/refine.hpp"

namespace lrvis::testing {

AnalyticField smooth_scalar() {
    AnalyticField f;
    f.kind = AnalyticKind::Sine;
    f.scale = 4.0;
    f.center = {0.3, 0.6, 0.45};
    return f;
}

lr::LRSplineVolume uniform_dataset(int degree, int levels, AnalyticField field) {
    io::SyntheticSpec s;
    s.kind = io::SyntheticKind::Uniform;
    s.levels = levels;
    s.degrees = {{degree, degree, degree}};
    s.field = field;
    return io::generate_synthetic(s);
}

lr::LRSplineVolume dyadic_dataset(int degree, int levels, AnalyticField field) {
    io::SyntheticSpec s;
    s.kind = io::SyntheticKind::DyadicMultiscale;
    s.levels = levels;
    s.degrees = {{degree, degree, degree}};
    s.field = field;
    return io::generate_synthetic(s);
}

lr::LRSplineVolume nondyadic_dataset(int degree, int levels, AnalyticField field) {
    io::SyntheticSpec s;
    s.kind = io::SyntheticKind::NonDyadic;
    s.levels = levels;
    s.degrees = {{degree, degree, degree}};
    s.field = field;
    return io::generate_synthetic(s);
}

std::vector<NamedDataset> standard_datasets(int degree) {
    const std::string d = std::to_string(degree);
    return {{"uniform-p" + d, uniform_dataset(degree, 2)},
            {"dyadic-p" + d, dyadic_dataset(degree, 3)},
            {"nondyadic-p" + d, nondyadic_dataset(degree, 1)}};
}

lr::LRSplineVolume random_patch(int degree, unsigned seed, int range_dim) {
    std::array<std::vector<double>, 3> breaks{{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}};
    lr::LRSplineVolume vol = io::tensor_volume({{degree, degree, degree}}, breaks, range_dim);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& f : vol.bsplines)
        for (auto& c : f.coef) c = u(rng);
    return vol;
}

}  // namespace lrvis::testing
