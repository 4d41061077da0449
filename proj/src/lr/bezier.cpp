// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/lr/bezier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "lrvis/core/error.hpp"
#include "lrvis/lr/bspline.hpp"

namespace lrvis::lr {
namespace {

constexpr int kMaxOrder = kMaxSupportedDegree + 1;
using Matrix = std::array<std::array<double, kMaxOrder>, kMaxOrder>;

double interpolation_node(int p, int i) { return p == 0 ? 0.5 : static_cast<double>(i) / p; }

// Inverse of V[i][j] = B_j^p(t_i) by Gauss-Jordan with partial pivoting.
Matrix invert_bernstein_vandermonde(int p) {
    const int n = p + 1;
    Matrix a{}, inv{};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = bernstein(p, j, interpolation_node(p, i));
        inv[i][i] = 1.0;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double d = a[col][col];
        for (int j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

const Matrix& vandermonde_inverse(int p) {
    static const std::array<Matrix, kMaxOrder> table = [] {
        std::array<Matrix, kMaxOrder> t{};
        for (int q = 0; q < kMaxOrder; ++q) t[q] = invert_bernstein_vandermonde(q);
        return t;
    }();
    return table[static_cast<std::size_t>(p)];
}

const Matrix& vandermonde(int p) {
    static const std::array<Matrix, kMaxOrder> table = [] {
        std::array<Matrix, kMaxOrder> t{};
        for (int q = 0; q < kMaxOrder; ++q)
            for (int i = 0; i <= q; ++i)
                for (int j = 0; j <= q; ++j) t[q][i][j] = bernstein(q, j, interpolation_node(q, i));
        return t;
    }();
    return table[static_cast<std::size_t>(p)];
}

// data has dims[0] x dims[1] x dims[2] x n (axis 0 fastest after components);
// replaces every line along `axis` by m * line.
void apply_along_axis(std::vector<double>& data, const std::array<int, 3>& dims, int n, int axis, const Matrix& m) {
    const int len = dims[axis];
    std::array<std::size_t, 3> stride{};
    stride[0] = static_cast<std::size_t>(n);
    stride[1] = stride[0] * dims[0];
    stride[2] = stride[1] * dims[1];
    const int o1 = axis == 0 ? 1 : 0;
    const int o2 = axis == 2 ? 1 : 2;
    std::array<double, kMaxOrder> line{};
    for (int b = 0; b < dims[o2]; ++b) {
        for (int a = 0; a < dims[o1]; ++a) {
            for (int c = 0; c < n; ++c) {
                const std::size_t base = a * stride[o1] + b * stride[o2] + c;
                for (int i = 0; i < len; ++i) line[i] = data[base + i * stride[axis]];
                for (int i = 0; i < len; ++i) {
                    double s = 0.0;
                    for (int j = 0; j < len; ++j) s += m[i][j] * line[j];
                    data[base + i * stride[axis]] = s;
                }
            }
        }
    }
}

template <class Real>
Real casteljau(Real* b, int p, Real t) {
    for (int r = 1; r <= p; ++r)
        for (int i = 0; i + r <= p; ++i) b[i] = (Real(1) - t) * b[i] + t * b[i + 1];
    return b[0];
}

// Value and derivative d/dt of a Bernstein polynomial; derivative taken from
// the last De Casteljau level.
template <class Real>
Real casteljau_with_derivative(Real* b, int p, Real t, Real& derivative) {
    if (p == 0) {
        derivative = Real(0);
        return b[0];
    }
    for (int r = 1; r < p; ++r)
        for (int i = 0; i + r <= p; ++i) b[i] = (Real(1) - t) * b[i] + t * b[i + 1];
    derivative = static_cast<Real>(p) * (b[1] - b[0]);
    return (Real(1) - t) * b[0] + t * b[1];
}

template <class Real>
std::array<Real, 3> local_coordinates(const BasicBezierBlock<Real>& block, const Vec3T<Real>& p) {
    std::array<Real, 3> t{};
    for (int a = 0; a < 3; ++a)
        t[a] = std::clamp((p[a] - block.lo[a]) / (block.hi[a] - block.lo[a]), Real(0), Real(1));
    return t;
}

}  // namespace

double bernstein(int p, int i, double t) {
    if (i < 0 || i > p) return 0.0;
    double binom = 1.0;
    for (int k = 1; k <= i; ++k) binom = binom * (p - i + k) / k;
    return binom * std::pow(t, i) * std::pow(1.0 - t, p - i);
}

BezierBlock to_bezier(const LRSplineVolume& vol, std::size_t element) {
    if (element >= vol.elements.size())
        throw ValidationError("element index " + std::to_string(element) + " out of range");
    const Element& e = vol.elements[element];
    const TriDegree& deg = vol.degrees;
    const int n = vol.range_dim;
    const std::array<int, 3> dims{deg[0] + 1, deg[1] + 1, deg[2] + 1};
    const Vec3 mid = e.box.center();

    // Per-support 1D basis values at the interpolation nodes.
    const std::size_t ns = e.supports.size();
    std::array<std::vector<double>, 3> basis;
    for (int a = 0; a < 3; ++a) {
        basis[a].resize(ns * dims[a]);
        for (std::size_t s = 0; s < ns; ++s) {
            const LRBSpline& b = vol.bsplines[e.supports[s]];
            for (int i = 0; i < dims[a]; ++i) {
                const double x = e.box.lo[a] + interpolation_node(deg[a], i) * (e.box.hi[a] - e.box.lo[a]);
                basis[a][s * dims[a] + i] = eval_bspline_piece(b.knots[a], deg[a], x, mid[a]);
            }
        }
    }

    std::vector<double> samples(static_cast<std::size_t>(deg.control_count()) * n, 0.0);
    for (std::size_t s = 0; s < ns; ++s) {
        const LRBSpline& b = vol.bsplines[e.supports[s]];
        std::size_t idx = 0;
        for (int k = 0; k < dims[2]; ++k) {
            const double wk = b.gamma * basis[2][s * dims[2] + k];
            for (int j = 0; j < dims[1]; ++j) {
                const double wjk = wk * basis[1][s * dims[1] + j];
                for (int i = 0; i < dims[0]; ++i, idx += n) {
                    const double w = wjk * basis[0][s * dims[0] + i];
                    if (w == 0.0) continue;
                    for (int c = 0; c < n; ++c) samples[idx + c] += w * b.coef[c];
                }
            }
        }
    }

    std::vector<double> coef = samples;
    for (int a = 0; a < 3; ++a) apply_along_axis(coef, dims, n, a, vandermonde_inverse(deg[a]));

    std::vector<double> check = coef;
    for (int a = 0; a < 3; ++a) apply_along_axis(check, dims, n, a, vandermonde(deg[a]));
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    double max_abs = 0.0, residual = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        max_abs = std::max(max_abs, std::abs(samples[i]));
        residual = std::max(residual, std::abs(check[i] - samples[i]));
    }
    const double scale = std::max({*mx - *mn, 1e-3 * max_abs, 1e-300});
    if (!(residual <= 1e-7 * scale))
        throw NumericError("Bezier extraction of element " + std::to_string(element) + " failed: residual " +
                           std::to_string(residual));

    BezierBlock block;
    block.lo = e.box.lo;
    block.hi = e.box.hi;
    block.degrees = deg;
    block.range_dim = n;
    block.coef = std::move(coef);
    return block;
}

BezierVolume to_bezier_volume(const LRSplineVolume& vol) {
    BezierVolume out;
    out.degrees = vol.degrees;
    out.domain = vol.domain;
    out.range_dim = vol.range_dim;
    out.blocks.reserve(vol.elements.size());
    for (std::size_t e = 0; e < vol.elements.size(); ++e) out.blocks.push_back(to_bezier(vol, e));
    return out;
}

BezierVolumeF to_single(const BezierVolume& vol) {
    BezierVolumeF out;
    out.degrees = vol.degrees;
    out.domain = vol.domain;
    out.range_dim = vol.range_dim;
    out.blocks.reserve(vol.blocks.size());
    for (const auto& b : vol.blocks) {
        BezierBlockF f;
        f.lo = Vec3f(b.lo);
        f.hi = Vec3f(b.hi);
        f.degrees = b.degrees;
        f.range_dim = b.range_dim;
        f.coef.assign(b.coef.begin(), b.coef.end());
        out.blocks.push_back(std::move(f));
    }
    return out;
}

template <class Real>
void eval_bezier(const BasicBezierBlock<Real>& block, const Vec3T<Real>& p, std::span<Real> out) {
    const auto t = local_coordinates(block, p);
    const int p0 = block.degrees[0], p1 = block.degrees[1], p2 = block.degrees[2];
    const int n = block.range_dim;
    std::array<Real, kMaxOrder> row{};
    std::array<Real, kMaxOrder * kMaxOrder> plane{};
    std::array<Real, kMaxOrder> line{};
    for (int c = 0; c < n; ++c) {
        std::size_t idx = static_cast<std::size_t>(c);
        for (int k = 0; k <= p2; ++k) {
            for (int j = 0; j <= p1; ++j) {
                for (int i = 0; i <= p0; ++i, idx += n) row[i] = block.coef[idx];
                plane[k * (p1 + 1) + j] = casteljau(row.data(), p0, t[0]);
            }
            line[k] = casteljau(plane.data() + k * (p1 + 1), p1, t[1]);
        }
        out[c] = casteljau(line.data(), p2, t[2]);
    }
}

template <class Real>
void eval_bezier_gradient(const BasicBezierBlock<Real>& block, const Vec3T<Real>& p, std::span<Real> value,
                          std::span<Real> grad) {
    const auto t = local_coordinates(block, p);
    const int p0 = block.degrees[0], p1 = block.degrees[1], p2 = block.degrees[2];
    const int n = block.range_dim;
    std::array<Real, kMaxOrder> row{};
    std::array<Real, kMaxOrder * kMaxOrder> plane_v{}, plane_du{};
    std::array<Real, kMaxOrder> line_v{}, line_du{}, line_dv{};
    for (int c = 0; c < n; ++c) {
        std::size_t idx = static_cast<std::size_t>(c);
        for (int k = 0; k <= p2; ++k) {
            for (int j = 0; j <= p1; ++j) {
                for (int i = 0; i <= p0; ++i, idx += n) row[i] = block.coef[idx];
                Real du{};
                plane_v[k * (p1 + 1) + j] = casteljau_with_derivative(row.data(), p0, t[0], du);
                plane_du[k * (p1 + 1) + j] = du;
            }
            Real dv{};
            line_v[k] = casteljau_with_derivative(plane_v.data() + k * (p1 + 1), p1, t[1], dv);
            line_dv[k] = dv;
            line_du[k] = casteljau(plane_du.data() + k * (p1 + 1), p1, t[1]);
        }
        Real dw{};
        value[c] = casteljau_with_derivative(line_v.data(), p2, t[2], dw);
        const Real du = casteljau(line_du.data(), p2, t[2]);
        const Real dv = casteljau(line_dv.data(), p2, t[2]);
        grad[3 * c + 0] = du / (block.hi[0] - block.lo[0]);
        grad[3 * c + 1] = dv / (block.hi[1] - block.lo[1]);
        grad[3 * c + 2] = dw / (block.hi[2] - block.lo[2]);
    }
}

double eval_bezier_scalar(const BezierBlock& block, const Vec3& p) {
    std::array<double, 1> v{};
    if (block.range_dim == 1) {
        eval_bezier<double>(block, p, v);
        return v[0];
    }
    std::vector<double> all(static_cast<std::size_t>(block.range_dim));
    eval_bezier<double>(block, p, all);
    return all[0];
}

template void eval_bezier<double>(const BezierBlock&, const Vec3&, std::span<double>);
template void eval_bezier<float>(const BezierBlockF&, const Vec3f&, std::span<float>);
template void eval_bezier_gradient<double>(const BezierBlock&, const Vec3&, std::span<double>, std::span<double>);
template void eval_bezier_gradient<float>(const BezierBlockF&, const Vec3f&, std::span<float>, std::span<float>);

}  // namespace lrvis::lr
