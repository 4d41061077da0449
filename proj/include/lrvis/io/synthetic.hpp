// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "lrvis/core/analytic.hpp"
#include "lrvis/lr/volume.hpp"

namespace lrvis::io {

enum class SyntheticKind { Uniform, DyadicMultiscale, NonDyadic };

const char* to_string(SyntheticKind kind);
SyntheticKind synthetic_kind_from_string(const std::string& name);

/// Recipe for a generated dataset with a known ground-truth field.
///
/// uniform: (base_cells * 2^levels)^3 tensor grid.
/// dyadic-multiscale: base_cells^3 grid, then `levels` rounds of local
///   refinement around `focus`, each halving the finest element side.
/// non-dyadic: breakpoints at multiples of 1/3 and 1/7, then `levels` rounds
///   of local refinement.
struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::Uniform;
    int levels = 0;
    lr::TriDegree degrees{{2, 2, 2}};
    AnalyticField field;
    Box3 domain{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}};
    int base_cells = 0;          // 0: 1 for uniform, 8 otherwise
    std::optional<Vec3> focus;   // refinement center; defaults to field.center
    double focus_radius = 0.5;   // in units of the element side being refined
};

/// Builds the dataset. Coefficients sample the analytic field at generalized
/// Greville points, so affine fields are reproduced exactly. Elements are listed
/// explicitly and supports are bound.
lr::LRSplineVolume generate_synthetic(const SyntheticSpec& spec);

}  // namespace lrvis::io
