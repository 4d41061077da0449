// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace lrvis {

/// Small fixed-size 3-vector used for points, directions and colors.
template <class T>
struct Vec3T {
    std::array<T, 3> v{};

    constexpr Vec3T() = default;
    constexpr Vec3T(T x, T y, T z) : v{x, y, z} {}

    template <class U>
    constexpr explicit Vec3T(const Vec3T<U>& o) : v{static_cast<T>(o[0]), static_cast<T>(o[1]), static_cast<T>(o[2])} {}

    constexpr T& operator[](std::size_t i) { return v[i]; }
    constexpr const T& operator[](std::size_t i) const { return v[i]; }

    constexpr Vec3T& operator+=(const Vec3T& o) {
        for (int i = 0; i < 3; ++i) v[i] += o.v[i];
        return *this;
    }
    constexpr Vec3T& operator-=(const Vec3T& o) {
        for (int i = 0; i < 3; ++i) v[i] -= o.v[i];
        return *this;
    }
    constexpr Vec3T& operator*=(T s) {
        for (auto& x : v) x *= s;
        return *this;
    }

    friend constexpr Vec3T operator+(Vec3T a, const Vec3T& b) { return a += b; }
    friend constexpr Vec3T operator-(Vec3T a, const Vec3T& b) { return a -= b; }
    friend constexpr Vec3T operator-(const Vec3T& a) { return {-a[0], -a[1], -a[2]}; }
    friend constexpr Vec3T operator*(Vec3T a, T s) { return a *= s; }
    friend constexpr Vec3T operator*(T s, Vec3T a) { return a *= s; }
    friend constexpr Vec3T operator/(const Vec3T& a, T s) { return {a[0] / s, a[1] / s, a[2] / s}; }
    friend constexpr bool operator==(const Vec3T&, const Vec3T&) = default;
};

using Vec3 = Vec3T<double>;
using Vec3f = Vec3T<float>;

template <class T>
constexpr T dot(const Vec3T<T>& a, const Vec3T<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
constexpr Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
T norm(const Vec3T<T>& a) {
    return std::sqrt(dot(a, a));
}

template <class T>
Vec3T<T> normalized(const Vec3T<T>& a) {
    const T n = norm(a);
    return n > T(0) ? a / n : a;
}

template <class T>
constexpr Vec3T<T> cwise_min(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {std::min(a[0], b[0]), std::min(a[1], b[1]), std::min(a[2], b[2])};
}

template <class T>
constexpr Vec3T<T> cwise_max(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {std::max(a[0], b[0]), std::max(a[1], b[1]), std::max(a[2], b[2])};
}

/// Axis-aligned box [lo, hi].
struct Box3 {
    Vec3 lo;
    Vec3 hi;

    Vec3 extent() const { return hi - lo; }
    Vec3 center() const { return (lo + hi) * 0.5; }
    double volume() const {
        const Vec3 e = extent();
        return e[0] * e[1] * e[2];
    }
    double diagonal() const { return norm(extent()); }
    double min_side() const {
        const Vec3 e = extent();
        return std::min({e[0], e[1], e[2]});
    }

    /// Closed containment of another box.
    bool contains(const Box3& o) const {
        for (int a = 0; a < 3; ++a)
            if (o.lo[a] < lo[a] || o.hi[a] > hi[a]) return false;
        return true;
    }

    bool contains_closed(const Vec3& p) const {
        for (int a = 0; a < 3; ++a)
            if (p[a] < lo[a] || p[a] > hi[a]) return false;
        return true;
    }

    /// True when the interiors intersect (positive-volume overlap).
    bool overlaps(const Box3& o) const {
        for (int a = 0; a < 3; ++a)
            if (!(lo[a] < o.hi[a] && o.lo[a] < hi[a])) return false;
        return true;
    }

    Vec3 clamp(const Vec3& p) const { return cwise_min(cwise_max(p, lo), hi); }

    friend bool operator==(const Box3&, const Box3&) = default;
};

/// Half-open membership [lo, hi) per axis, closed where hi coincides with
/// the enclosing domain's upper bound.
inline bool contains_half_open(const Box3& box, const Vec3& p, const Box3& domain) {
    for (int a = 0; a < 3; ++a) {
        if (p[a] < box.lo[a]) return false;
        if (p[a] >= box.hi[a] && !(p[a] == box.hi[a] && box.hi[a] == domain.hi[a])) return false;
    }
    return true;
}

}  // namespace lrvis
