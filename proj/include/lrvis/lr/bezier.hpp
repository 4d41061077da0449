// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lrvis/core/vec.hpp"
#include "lrvis/lr/volume.hpp"

namespace lrvis::lr {

/// Tensor Bernstein form of one element. Coefficients are stored component
/// innermost, then u fastest: coef[((k*(p2+1) + j)*(p1+1) + i)*n + c].
template <class Real>
struct BasicBezierBlock {
    Vec3T<Real> lo;
    Vec3T<Real> hi;
    TriDegree degrees;
    int range_dim = 1;
    std::vector<Real> coef;

    Box3 box() const { return {Vec3(lo), Vec3(hi)}; }
};

template <class Real>
struct BasicBezierVolume {
    TriDegree degrees;
    Box3 domain;
    int range_dim = 1;
    std::vector<BasicBezierBlock<Real>> blocks;
};

using BezierBlock = BasicBezierBlock<double>;
using BezierBlockF = BasicBezierBlock<float>;
using BezierVolume = BasicBezierVolume<double>;
using BezierVolumeF = BasicBezierVolume<float>;

/// Change of basis of one element: samples eval_lr on the nodes i/p_k per axis
/// (midpoint for p_k = 0) and solves the Bernstein-Vandermonde system axis by
/// axis. Throws NumericError if the interpolation residual exceeds
/// 1e-7 times the sample range.
BezierBlock to_bezier(const LRSplineVolume& vol, std::size_t element);

/// Extracts every element. `vol` must have bound supports.
BezierVolume to_bezier_volume(const LRSplineVolume& vol);

/// 32-bit copy: coefficients and box corners rounded to float.
BezierVolumeF to_single(const BezierVolume& vol);

/// De Casteljau evaluation at p (clamped into the block). `out` has range_dim
/// entries.
template <class Real>
void eval_bezier(const BasicBezierBlock<Real>& block, const Vec3T<Real>& p, std::span<Real> out);

/// Value plus exact partial derivatives (parameter units^-1). `grad` is
/// row-major range_dim x 3.
template <class Real>
void eval_bezier_gradient(const BasicBezierBlock<Real>& block, const Vec3T<Real>& p, std::span<Real> value,
                          std::span<Real> grad);

/// Scalar convenience wrappers (component 0).
double eval_bezier_scalar(const BezierBlock& block, const Vec3& p);

/// Bernstein polynomial B_i^p(t), evaluated directly.
double bernstein(int p, int i, double t);

}  // namespace lrvis::lr
