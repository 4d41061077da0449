// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lrvis/lr/volume.hpp"

namespace lrvis::lr {

enum class IssueKind {
    BadDegree,
    BadRangeDim,
    BadDomain,
    BadKnots,
    BadGamma,
    BadCoefficient,
    NoElements,
    DegenerateElement,
    ElementOutsideDomain,
    Overlap,
    CoverageGap,
    EmptySupport,
    SupportMismatch,
    PartitionOfUnity,
};

const char* to_string(IssueKind kind);

struct Issue {
    IssueKind kind;
    std::string message;
    std::vector<std::size_t> indices;  // element or B-spline indices involved
    double value = 0.0;                // residual, missing volume, ...
};

struct ValidationReport {
    std::vector<Issue> issues;
    double max_pou_residual = 0.0;

    bool ok() const { return issues.empty(); }
    bool has(IssueKind kind) const;
    std::string summary() const;
};

inline constexpr double kPartitionOfUnityTolerance = 1e-9;

/// Checks every structural invariant of the volume and reports all
/// violations; never throws. Partition of unity is evaluated at element
/// centers using supports computed from scratch.
ValidationReport validate(const LRSplineVolume& vol);

}  // namespace lrvis::lr
