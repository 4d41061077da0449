// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace lrvis::flow {

/// Explicit Runge-Kutta scheme. `a` is row-major s x s, strictly lower
/// triangular. `b_hat` is empty for fixed-step methods.
struct ButcherTableau {
    std::string name;
    int stages = 0;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
    std::vector<double> b_hat;
    int order = 0;
    int embedded_order = 0;

    double a_at(int i, int j) const { return a[static_cast<std::size_t>(i * stages + j)]; }
    bool embedded() const { return !b_hat.empty(); }
};

/// RK1, RK2, RK3, RK4, RK4_38, RKF5, HE, BS or RKF45. Throws ValidationError otherwise.
const ButcherTableau& tableau(const std::string& name);

std::vector<std::string> tableau_names();

}  // namespace lrvis::flow
