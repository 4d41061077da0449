// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/flow/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <type_traits>

#include "lrvis/core/error.hpp"
#include "lrvis/core/parallel.hpp"

namespace lrvis::flow {

const char* to_string(Precision p) {
    switch (p) {
        case Precision::Single: return "single";
        case Precision::Mixed: return "mixed";
        case Precision::Double: return "double";
    }
    return "?";
}

const char* to_string(StepMode m) {
    switch (m) {
        case StepMode::Fixed: return "fixed";
        case StepMode::Embedded: return "embedded";
        case StepMode::Heuristic: return "heuristic";
    }
    return "?";
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::ExitedDomain: return "exited-domain";
        case Termination::TimeReached: return "time-reached";
        case Termination::MaxSamples: return "max-samples";
        case Termination::StepUnderflow: return "step-underflow";
    }
    return "?";
}

Precision precision_from_string(const std::string& s) {
    for (Precision p : {Precision::Single, Precision::Mixed, Precision::Double})
        if (s == to_string(p)) return p;
    throw ValidationError("unknown precision '" + s + "' (single, mixed, double)");
}

StepMode step_mode_from_string(const std::string& s) {
    for (StepMode m : {StepMode::Fixed, StepMode::Embedded, StepMode::Heuristic})
        if (s == to_string(m)) return m;
    throw ValidationError("unknown step mode '" + s + "' (fixed, embedded, heuristic)");
}

Termination termination_from_string(const std::string& s) {
    for (Termination t : {Termination::ExitedDomain, Termination::TimeReached, Termination::MaxSamples, Termination::StepUnderflow})
        if (s == to_string(t)) return t;
    throw ValidationError("unknown termination '" + s + "'");
}

void IntegratorConfig::validate() const {
    const ButcherTableau& tab = tableau(method);
    if (!(h0 > 0.0) || !std::isfinite(h0)) throw ValidationError("integrator: h0 must be positive");
    if (mode == StepMode::Embedded) {
        if (!tab.embedded()) throw ValidationError("integrator: " + method + " has no embedded estimate");
        if (!(tol > 0.0) || !std::isfinite(tol)) throw ValidationError("integrator: tol must be positive");
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("integrator: t_max must be positive");
    if (max_samples < 2) throw ValidationError("integrator: max_samples must be at least 2");
}

namespace {

std::string format_point(const Vec3& p) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << p[0] << ", " << p[1] << ", " << p[2] << ')';
    return os.str();
}

// Largest float box inside the domain, so a rounded query never leaves it.
struct FloatBox {
    Vec3f lo, hi;
};

FloatBox inner_float_box(const Box3& b) {
    FloatBox f;
    for (int a = 0; a < 3; ++a) {
        float lo = static_cast<float>(b.lo[a]);
        if (static_cast<double>(lo) < b.lo[a]) lo = std::nextafter(lo, std::numeric_limits<float>::infinity());
        float hi = static_cast<float>(b.hi[a]);
        if (static_cast<double>(hi) > b.hi[a]) hi = std::nextafter(hi, -std::numeric_limits<float>::infinity());
        f.lo[a] = lo;
        f.hi[a] = hi;
    }
    return f;
}

template <class T>
bool clamp_into(Vec3T<T>& p, const Vec3T<T>& lo, const Vec3T<T>& hi) {
    bool moved = false;
    for (int a = 0; a < 3; ++a) {
        const T c = std::clamp(p[a], lo[a], hi[a]);
        if (c != p[a]) moved = true;
        p[a] = c;
    }
    return moved;
}

template <class T>
bool finite(const Vec3T<T>& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

template <class T>
class Stepper {
public:
    Stepper(const VectorField& field, Precision precision)
        : field_(field), precision_(precision), fbox_(inner_float_box(field.domain())) {}

    Vec3T<T> eval(Vec3T<T> y, int stage, bool& exited) const {
        Vec3T<T> out;
        bool ok = false;
        if constexpr (std::is_same_v<T, float>) {
            exited |= clamp_into(y, fbox_.lo, fbox_.hi);
            ok = field_.eval_f32(y, out);
        } else {
            exited |= clamp_into(y, field_.domain().lo, field_.domain().hi);
            if (precision_ == Precision::Double) {
                ok = field_.eval(y, out);
            } else {
                Vec3f q(y);
                clamp_into(q, fbox_.lo, fbox_.hi);
                Vec3f k;
                ok = field_.eval_f32(q, k);
                out = Vec3(k);
            }
        }
        if (!ok) throw NumericError("field lookup failed at " + format_point(Vec3(y)) + " in stage " + std::to_string(stage));
        if (!finite(out))
            throw NumericError("non-finite field value at " + format_point(Vec3(y)) + " in stage " + std::to_string(stage));
        return out;
    }

    StepResult step(const ButcherTableau& tab, const Vec3T<T>& x, T h) const {
        std::vector<Vec3T<T>> k(static_cast<std::size_t>(tab.stages));
        StepResult r;
        for (int i = 0; i < tab.stages; ++i) {
            Vec3T<T> acc{};
            for (int j = 0; j < i; ++j) {
                const T a = static_cast<T>(tab.a_at(i, j));
                if (a != T(0)) acc += k[j] * a;
            }
            k[i] = eval(x + acc * h, i, r.exited);
            ++r.evals;
        }
        Vec3T<T> high{};
        for (int i = 0; i < tab.stages; ++i) high += k[i] * static_cast<T>(tab.b[i]);
        r.x_next = Vec3(x + high * h);
        if (tab.embedded()) {
            Vec3T<T> low{};
            for (int i = 0; i < tab.stages; ++i) low += k[i] * static_cast<T>(tab.b_hat[i]);
            r.x_low = Vec3(x + low * h);
        } else {
            r.x_low = r.x_next;
        }
        return r;
    }

private:
    const VectorField& field_;
    Precision precision_;
    FloatBox fbox_;
};

bool finite_point(const Vec3& p) { return finite(p); }

void check_seed(const VectorField& field, const Vec3& seed, const std::string& label) {
    if (!finite_point(seed) || !field.domain().contains_closed(seed))
        throw ValidationError(label + " " + format_point(seed) + " is outside the domain");
}

// Fraction of the segment a->b that stays inside the box (a inside).
double exit_fraction(const Box3& box, const Vec3& a, const Vec3& b) {
    double s = 1.0;
    for (int ax = 0; ax < 3; ++ax) {
        const double d = b[ax] - a[ax];
        if (b[ax] > box.hi[ax] && d > 0.0) s = std::min(s, (box.hi[ax] - a[ax]) / d);
        if (b[ax] < box.lo[ax] && d < 0.0) s = std::min(s, (box.lo[ax] - a[ax]) / d);
    }
    return std::clamp(s, 0.0, 1.0);
}

}  // namespace

StepResult rk_step(const VectorField& field, const ButcherTableau& tab, const Vec3& x, double h, Precision precision) {
    if (precision == Precision::Single)
        return Stepper<float>(field, precision).step(tab, Vec3f(x), static_cast<float>(h));
    return Stepper<double>(field, precision).step(tab, x, h);
}

Streamline integrate(const VectorField& field, const Vec3& seed, const IntegratorConfig& config) {
    config.validate();
    check_seed(field, seed, "seed");
    const ButcherTableau& tab = tableau(config.method);
    const Box3& dom = field.domain();
    const bool single = config.precision == Precision::Single;
    const double h_min = 1e-14 * dom.diagonal();

    Streamline line;
    line.seed = seed;
    Vec3 x = single ? Vec3(Vec3f(seed)) : seed;
    double t = 0.0;
    line.samples.push_back({t, x});
    double h = config.h0;

    for (;;) {
        if (line.samples.size() >= config.max_samples) {
            line.termination = Termination::MaxSamples;
            break;
        }
        const double remaining = config.t_max - t;
        if (remaining <= 0.0) {
            line.termination = Termination::TimeReached;
            break;
        }
        double h_try = config.mode == StepMode::Heuristic ? config.h0 * field.local_step(x) : h;
        if (!(h_try >= h_min)) {
            line.termination = Termination::StepUnderflow;
            break;
        }
        const bool last = h_try >= remaining * (1.0 - 1e-12);
        if (last) h_try = remaining;

        StepResult r;
        try {
            r = rk_step(field, tab, x, h_try, config.precision);
        } catch (const NumericError& e) {
            throw NumericError(std::string(e.what()) + " (seed " + format_point(seed) + ", t=" + std::to_string(t) + ")");
        }
        line.field_evals += static_cast<std::size_t>(r.evals);

        double h_next = h;
        if (config.mode == StepMode::Embedded) {
            const double err = norm(r.x_next - r.x_low);
            const double factor =
                err > 0.0 ? std::clamp(0.9 * std::pow(config.tol / err, 1.0 / tab.order), 0.2, 5.0) : 5.0;
            if (!std::isfinite(err)) throw NumericError("non-finite error estimate (seed " + format_point(seed) + ")");
            if (err > config.tol) {
                h = h_try * factor;
                continue;
            }
            h_next = h_try * factor;
        }

        double t_next = last ? config.t_max : t + h_try;
        if (single && !last) t_next = static_cast<double>(static_cast<float>(t) + static_cast<float>(h_try));
        if (!(t_next > t)) {
            line.termination = Termination::StepUnderflow;
            break;
        }

        if (!dom.contains_closed(r.x_next)) {
            const double s = exit_fraction(dom, x, r.x_next);
            const double t_exit = t + s * (t_next - t);
            if (s > 0.0 && t_exit > t) line.samples.push_back({t_exit, dom.clamp(x + (r.x_next - x) * s)});
            line.termination = Termination::ExitedDomain;
            break;
        }
        x = r.x_next;
        t = t_next;
        line.samples.push_back({t, x});
        h = h_next;
    }
    return line;
}

std::vector<Streamline> integrate_all(const VectorField& field, const std::vector<Vec3>& seeds,
                                      const IntegratorConfig& config, unsigned workers) {
    config.validate();
    for (std::size_t i = 0; i < seeds.size(); ++i) check_seed(field, seeds[i], "seed " + std::to_string(i));
    std::vector<Streamline> out(seeds.size());
    parallel_for(seeds.size(), workers, [&](std::size_t i) { out[i] = integrate(field, seeds[i], config); });
    return out;
}

std::size_t total_field_evals(const std::vector<Streamline>& lines) {
    std::size_t n = 0;
    for (const auto& l : lines) n += l.field_evals;
    return n;
}

}  // namespace lrvis::flow
