// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/flow/field.hpp"

#include <string>

#include "lrvis/core/error.hpp"

namespace lrvis::flow {

SplineVectorField::SplineVectorField(std::shared_ptr<const accel::FieldEvaluator> field) : field_(std::move(field)) {
    if (!field_) throw ValidationError("vector field: no dataset");
    if (field_->range_dim() != 3)
        throw ValidationError("vector field: dataset has range_dim " + std::to_string(field_->range_dim()) + ", expected 3");
}

bool SplineVectorField::eval(const Vec3& p, Vec3& out) const {
    double v[3];
    if (!field_->eval(p, v)) return false;
    out = {v[0], v[1], v[2]};
    return true;
}

bool SplineVectorField::eval_f32(const Vec3f& p, Vec3f& out) const {
    float v[3];
    if (!field_->eval_f32(p, v)) return false;
    out = {v[0], v[1], v[2]};
    return true;
}

double SplineVectorField::local_step(const Vec3& p) const {
    const accel::ElementId e = field_->locate(field_->domain().clamp(p));
    if (e == accel::kNoElement) throw NumericError("element lookup failed during step selection");
    return field_->local_step(e);
}

AnalyticVectorField::AnalyticVectorField(AnalyticField field, Box3 domain) : field_(std::move(field)), domain_(domain) {
    if (field_.range_dim() != 3) throw ValidationError("analytic vector field must have three components");
}

bool AnalyticVectorField::eval(const Vec3& p, Vec3& out) const {
    if (!accel::in_domain(domain_, p)) return false;
    double v[3];
    field_.eval(p, v);
    out = {v[0], v[1], v[2]};
    return true;
}

bool AnalyticVectorField::eval_f32(const Vec3f& p, Vec3f& out) const {
    const Vec3 q(p);
    if (!accel::in_domain(domain_, q)) return false;
    if (field_.kind == AnalyticKind::Rotational) {
        const Vec3f d = p - Vec3f(field_.center);
        const float s = static_cast<float>(field_.scale);
        out = {-s * d[1], s * d[0], 0.0f};
        return true;
    }
    double v[3];
    field_.eval(q, v);
    out = {static_cast<float>(v[0]), static_cast<float>(v[1]), static_cast<float>(v[2])};
    return true;
}

double AnalyticVectorField::local_step(const Vec3&) const {
    throw ValidationError("the heuristic step needs an LR-spline dataset");
}

double AnalyticVectorField::min_element_side() const { return domain_.min_side(); }

}  // namespace lrvis::flow
