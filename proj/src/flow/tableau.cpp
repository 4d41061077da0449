// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/flow/tableau.hpp"

#include <map>

#include "lrvis/core/error.hpp"

namespace lrvis::flow {
namespace {

ButcherTableau make(std::string name, std::vector<double> c, std::vector<std::vector<double>> rows, std::vector<double> b,
                    int order, std::vector<double> b_hat = {}, int embedded_order = 0) {
    ButcherTableau t;
    t.name = std::move(name);
    t.stages = static_cast<int>(b.size());
    t.a.assign(static_cast<std::size_t>(t.stages * t.stages), 0.0);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (int j = 0; j < static_cast<int>(rows[i].size()); ++j) t.a[static_cast<std::size_t>((i + 1) * t.stages + j)] = rows[i][j];
    t.b = std::move(b);
    t.c = std::move(c);
    t.b_hat = std::move(b_hat);
    t.order = order;
    t.embedded_order = embedded_order;
    return t;
}

// Fehlberg 4(5): stages shared by RKF5 and RKF45.
const std::vector<double> kFehlbergC{0.0, 1.0 / 4, 3.0 / 8, 12.0 / 13, 1.0, 1.0 / 2};
const std::vector<std::vector<double>> kFehlbergA{
    {1.0 / 4},
    {3.0 / 32, 9.0 / 32},
    {1932.0 / 2197, -7200.0 / 2197, 7296.0 / 2197},
    {439.0 / 216, -8.0, 3680.0 / 513, -845.0 / 4104},
    {-8.0 / 27, 2.0, -3544.0 / 2565, 1859.0 / 4104, -11.0 / 40}};
const std::vector<double> kFehlberg5{16.0 / 135, 0.0, 6656.0 / 12825, 28561.0 / 56430, -9.0 / 50, 2.0 / 55};
const std::vector<double> kFehlberg4{25.0 / 216, 0.0, 1408.0 / 2565, 2197.0 / 4104, -1.0 / 5, 0.0};

const std::map<std::string, ButcherTableau>& registry() {
    static const std::map<std::string, ButcherTableau> r = [] {
        std::map<std::string, ButcherTableau> m;
        auto add = [&m](ButcherTableau t) { m.emplace(t.name, std::move(t)); };
        add(make("RK1", {0.0}, {}, {1.0}, 1));
        add(make("RK2", {0.0, 0.5}, {{0.5}}, {0.0, 1.0}, 2));
        add(make("RK3", {0.0, 0.5, 1.0}, {{0.5}, {-1.0, 2.0}}, {1.0 / 6, 2.0 / 3, 1.0 / 6}, 3));
        add(make("RK4", {0.0, 0.5, 0.5, 1.0}, {{0.5}, {0.0, 0.5}, {0.0, 0.0, 1.0}}, {1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6}, 4));
        add(make("RK4_38", {0.0, 1.0 / 3, 2.0 / 3, 1.0}, {{1.0 / 3}, {-1.0 / 3, 1.0}, {1.0, -1.0, 1.0}},
                 {1.0 / 8, 3.0 / 8, 3.0 / 8, 1.0 / 8}, 4));
        add(make("RKF5", kFehlbergC, kFehlbergA, kFehlberg5, 5));
        add(make("HE", {0.0, 1.0}, {{1.0}}, {0.5, 0.5}, 2, {1.0, 0.0}, 1));
        add(make("BS", {0.0, 0.5, 0.75, 1.0}, {{0.5}, {0.0, 0.75}, {2.0 / 9, 1.0 / 3, 4.0 / 9}}, {2.0 / 9, 1.0 / 3, 4.0 / 9, 0.0},
                 3, {7.0 / 24, 1.0 / 4, 1.0 / 3, 1.0 / 8}, 2));
        add(make("RKF45", kFehlbergC, kFehlbergA, kFehlberg5, 5, kFehlberg4, 4));
        return m;
    }();
    return r;
}

}  // namespace

const ButcherTableau& tableau(const std::string& name) {
    const auto& r = registry();
    const auto it = r.find(name);
    if (it == r.end()) throw ValidationError("unknown integration method '" + name + "'");
    return it->second;
}

std::vector<std::string> tableau_names() { return {"RK1", "RK2", "RK3", "RK4", "RK4_38", "RKF5", "HE", "BS", "RKF45"}; }

}  // namespace lrvis::flow
