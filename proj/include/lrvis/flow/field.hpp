// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>

#include "lrvis/accel/field_evaluator.hpp"
#include "lrvis/core/analytic.hpp"

namespace lrvis::flow {

/// Steady vector field on a box domain with 64- and 32-bit evaluation paths.
class VectorField {
public:
    virtual ~VectorField() = default;

    virtual const Box3& domain() const = 0;

    /// False when p is outside the domain.
    virtual bool eval(const Vec3& p, Vec3& out) const = 0;
    virtual bool eval_f32(const Vec3f& p, Vec3f& out) const = 0;

    /// Element-derived step at p (min side / 2^degree); throws when the field
    /// has no element structure.
    virtual double local_step(const Vec3& p) const = 0;
    virtual double min_element_side() const = 0;
};

/// LR-spline field with three components.
class SplineVectorField final : public VectorField {
public:
    /// Throws ValidationError unless the evaluator has range dimension 3.
    explicit SplineVectorField(std::shared_ptr<const accel::FieldEvaluator> field);

    const Box3& domain() const override { return field_->domain(); }
    bool eval(const Vec3& p, Vec3& out) const override;
    bool eval_f32(const Vec3f& p, Vec3f& out) const override;
    double local_step(const Vec3& p) const override;
    double min_element_side() const override { return field_->min_element_side(); }

    const accel::FieldEvaluator& evaluator() const { return *field_; }

private:
    std::shared_ptr<const accel::FieldEvaluator> field_;
};

/// Closed-form field, mainly for convergence studies. The 32-bit path
/// evaluates the formula in float on the float point.
class AnalyticVectorField final : public VectorField {
public:
    AnalyticVectorField(AnalyticField field, Box3 domain);

    const Box3& domain() const override { return domain_; }
    bool eval(const Vec3& p, Vec3& out) const override;
    bool eval_f32(const Vec3f& p, Vec3f& out) const override;
    double local_step(const Vec3& p) const override;
    double min_element_side() const override;

private:
    AnalyticField field_;
    Box3 domain_;
};

}  // namespace lrvis::flow
