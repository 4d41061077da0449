// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/io/scene.hpp"

#include "lrvis/core/error.hpp"
#include "lrvis/io/files.hpp"

namespace lrvis::io {
namespace {

using nlohmann::json;

double number(const json& v, const std::string& where) {
    if (!v.is_number()) throw FormatError(where + ": expected a number");
    return v.get<double>();
}

long long integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw FormatError(where + ": expected an integer");
    return v.get<long long>();
}

std::string text(const json& v, const std::string& where) {
    if (!v.is_string()) throw FormatError(where + ": expected a string");
    return v.get<std::string>();
}

Vec3 point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 3) throw FormatError(where + ": expected [x, y, z]");
    return {number(v[0], where), number(v[1], where), number(v[2], where)};
}

json point_json(const Vec3& p) { return json::array({p[0], p[1], p[2]}); }

// Reads obj[key] into out when present.
template <class F>
void opt(const json& obj, const char* key, const std::string& where, F&& read) {
    if (obj.contains(key)) read(obj.at(key), where + "." + key);
}

const json& object(const json& v, const std::string& where) {
    if (!v.is_object()) throw FormatError(where + ": expected an object");
    return v;
}

std::filesystem::path resolve(const std::string& p, const std::filesystem::path& base) {
    std::filesystem::path path(p);
    if (path.is_relative() && !base.empty()) path = base / path;
    return path;
}

volren::TrimMode trim_mode_from_string(const std::string& s) {
    if (s == "multi") return volren::TrimMode::Multi;
    if (s == "single") return volren::TrimMode::Single;
    throw ValidationError("unknown trim_mode '" + s + "' (multi, single)");
}

const char* to_string(volren::TrimMode m) { return m == volren::TrimMode::Multi ? "multi" : "single"; }

void read_camera(const json& v, const std::string& w, volren::Camera& c) {
    object(v, w);
    opt(v, "eye", w, [&](const json& x, const std::string& p) { c.eye = point(x, p); });
    opt(v, "look_at", w, [&](const json& x, const std::string& p) { c.look_at = point(x, p); });
    opt(v, "up", w, [&](const json& x, const std::string& p) { c.up = point(x, p); });
    opt(v, "fov_y", w, [&](const json& x, const std::string& p) { c.fov_y = number(x, p); });
    opt(v, "width", w, [&](const json& x, const std::string& p) { c.width = static_cast<int>(integer(x, p)); });
    opt(v, "height", w, [&](const json& x, const std::string& p) { c.height = static_cast<int>(integer(x, p)); });
    c.validate();
}

volren::TransferFunction read_tf(const json& v, const std::string& w) {
    if (!v.is_array()) throw FormatError(w + ": expected an array of control points");
    std::vector<volren::ControlPoint> pts;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = w + "[" + std::to_string(i) + "]";
        object(v[i], p);
        volren::ControlPoint cp;
        if (!v[i].contains("value")) throw FormatError(p + ": missing 'value'");
        cp.value = number(v[i]["value"], p + ".value");
        opt(v[i], "color", p, [&](const json& x, const std::string& q) { cp.color = point(x, q); });
        opt(v[i], "alpha", p, [&](const json& x, const std::string& q) { cp.alpha = number(x, q); });
        pts.push_back(cp);
    }
    return volren::TransferFunction(std::move(pts));
}

void read_render(const json& v, const std::string& w, volren::RenderSettings& s) {
    object(v, w);
    opt(v, "xi", w, [&](const json& x, const std::string& p) { s.xi = number(x, p); });
    opt(v, "supersamples", w, [&](const json& x, const std::string& p) { s.supersamples = static_cast<int>(integer(x, p)); });
    opt(v, "threshold", w, [&](const json& x, const std::string& p) { s.threshold = number(x, p); });
    opt(v, "base_step_scale", w, [&](const json& x, const std::string& p) { s.base_step_scale = number(x, p); });
    opt(v, "step", w, [&](const json& x, const std::string& p) { s.step = number(x, p); });
    opt(v, "mode", w, [&](const json& x, const std::string& p) { s.mode = volren::sampling_mode_from_string(text(x, p)); });
    opt(v, "lighting", w, [&](const json& x, const std::string& p) {
        if (!x.is_boolean()) throw FormatError(p + ": expected true or false");
        s.lighting = x.get<bool>();
    });
    opt(v, "light_dir", w, [&](const json& x, const std::string& p) { s.light_dir = point(x, p); });
    opt(v, "background", w, [&](const json& x, const std::string& p) { s.background = point(x, p); });
    opt(v, "trim_mode", w, [&](const json& x, const std::string& p) { s.trim_mode = trim_mode_from_string(text(x, p)); });
    s.validate();
}

std::vector<Vec3> read_seeds(const json& v, const std::string& w) {
    if (v.is_array()) {
        std::vector<Vec3> out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(point(v[i], w + "[" + std::to_string(i) + "]"));
        return out;
    }
    object(v, w);
    for (const char* k : {"counts", "lo", "hi"})
        if (!v.contains(k)) throw FormatError(w + ": grid needs 'counts', 'lo' and 'hi'");
    const json& c = v["counts"];
    if (!c.is_array() || c.size() != 3) throw FormatError(w + ".counts: expected [i, j, k]");
    std::array<int, 3> counts{};
    for (int a = 0; a < 3; ++a) counts[a] = static_cast<int>(integer(c[a], w + ".counts"));
    return grid_seeds(counts, Box3{point(v["lo"], w + ".lo"), point(v["hi"], w + ".hi")});
}

void read_integrator(const json& v, const std::string& w, flow::IntegratorConfig& c) {
    object(v, w);
    opt(v, "method", w, [&](const json& x, const std::string& p) { c.method = text(x, p); });
    opt(v, "mode", w, [&](const json& x, const std::string& p) { c.mode = flow::step_mode_from_string(text(x, p)); });
    opt(v, "h0", w, [&](const json& x, const std::string& p) { c.h0 = number(x, p); });
    opt(v, "tol", w, [&](const json& x, const std::string& p) { c.tol = number(x, p); });
    opt(v, "t_max", w, [&](const json& x, const std::string& p) { c.t_max = number(x, p); });
    opt(v, "max_samples", w, [&](const json& x, const std::string& p) {
        const long long n = integer(x, p);
        if (n < 0) throw ValidationError(p + ": must be non-negative");
        c.max_samples = static_cast<std::size_t>(n);
    });
    opt(v, "precision", w, [&](const json& x, const std::string& p) { c.precision = flow::precision_from_string(text(x, p)); });
    c.validate();
}

std::vector<flow::SweepRun> read_runs(const json& v, const std::string& w) {
    if (!v.is_array()) throw FormatError(w + ": expected an array of runs");
    std::vector<flow::SweepRun> runs;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string p = w + "[" + std::to_string(i) + "]";
        object(v[i], p);
        flow::SweepRun r;
        if (!v[i].contains("method") || !v[i].contains("params")) throw FormatError(p + ": needs 'method' and 'params'");
        r.method = text(v[i]["method"], p + ".method");
        flow::tableau(r.method);
        opt(v[i], "mode", p, [&](const json& x, const std::string& q) { r.mode = flow::step_mode_from_string(text(x, q)); });
        const json& ps = v[i]["params"];
        if (!ps.is_array() || ps.empty()) throw FormatError(p + ".params: expected a non-empty array");
        for (const auto& x : ps) {
            const double val = number(x, p + ".params");
            if (!(val > 0.0)) throw ValidationError(p + ".params: values must be positive");
            r.params.push_back(val);
        }
        runs.push_back(std::move(r));
    }
    return runs;
}

}  // namespace

std::vector<Vec3> grid_seeds(const std::array<int, 3>& counts, const Box3& box) {
    for (int a = 0; a < 3; ++a) {
        if (counts[a] < 1) throw ValidationError("seed grid: counts must be at least 1");
        if (box.hi[a] < box.lo[a]) throw ValidationError("seed grid: hi below lo");
    }
    if (static_cast<long long>(counts[0]) * counts[1] * counts[2] > 1000000) throw ValidationError("seed grid: too many seeds");
    auto coord = [&](int a, int i) {
        if (counts[a] == 1) return 0.5 * (box.lo[a] + box.hi[a]);
        return box.lo[a] + (box.hi[a] - box.lo[a]) * i / (counts[a] - 1);
    };
    std::vector<Vec3> out;
    for (int k = 0; k < counts[2]; ++k)
        for (int j = 0; j < counts[1]; ++j)
            for (int i = 0; i < counts[0]; ++i) out.push_back({coord(0, i), coord(1, j), coord(2, k)});
    return out;
}

Scene scene_from_json(const json& doc, const std::filesystem::path& base_dir) {
    const std::string w = "scene";
    object(doc, w);
    Scene s;
    opt(doc, "dataset", w, [&](const json& x, const std::string& p) { s.dataset = resolve(text(x, p), base_dir); });
    opt(doc, "trim", w, [&](const json& x, const std::string& p) {
        if (!x.is_null()) s.trim = resolve(text(x, p), base_dir);
    });
    opt(doc, "camera", w, [&](const json& x, const std::string& p) { read_camera(x, p, s.camera); });
    opt(doc, "transfer_function", w, [&](const json& x, const std::string& p) { s.transfer_function = read_tf(x, p); });
    opt(doc, "render", w, [&](const json& x, const std::string& p) { read_render(x, p, s.render); });
    opt(doc, "seeds", w, [&](const json& x, const std::string& p) { s.seeds = read_seeds(x, p); });
    opt(doc, "integrator", w, [&](const json& x, const std::string& p) { read_integrator(x, p, s.integrator); });
    opt(doc, "tubes", w, [&](const json& x, const std::string& p) {
        object(x, p);
        opt(x, "radius", p, [&](const json& r, const std::string& q) {
            s.tube_radius = number(r, q);
            if (!(s.tube_radius >= 0.0)) throw ValidationError(q + ": must be non-negative");
        });
    });
    opt(doc, "experiment", w, [&](const json& x, const std::string& p) {
        object(x, p);
        opt(x, "runs", p, [&](const json& r, const std::string& q) { s.experiment_runs = read_runs(r, q); });
        opt(x, "reference_step", p, [&](const json& r, const std::string& q) {
            const double h = number(r, q);
            if (!(h > 0.0)) throw ValidationError(q + ": must be positive");
            s.reference_step = h;
        });
    });
    return s;
}

json scene_to_json(const Scene& s) {
    json doc;
    if (s.dataset) doc["dataset"] = s.dataset->string();
    if (s.trim) doc["trim"] = s.trim->string();
    doc["camera"] = {{"eye", point_json(s.camera.eye)},       {"look_at", point_json(s.camera.look_at)},
                     {"up", point_json(s.camera.up)},         {"fov_y", s.camera.fov_y},
                     {"width", s.camera.width},               {"height", s.camera.height}};
    if (s.transfer_function) {
        json tf = json::array();
        for (const auto& p : s.transfer_function->points())
            tf.push_back({{"value", p.value}, {"color", point_json(p.color)}, {"alpha", p.alpha}});
        doc["transfer_function"] = tf;
    }
    const auto& r = s.render;
    doc["render"] = {{"xi", r.xi},
                     {"supersamples", r.supersamples},
                     {"threshold", r.threshold},
                     {"base_step_scale", r.base_step_scale},
                     {"step", r.step},
                     {"mode", volren::to_string(r.mode)},
                     {"lighting", r.lighting},
                     {"light_dir", point_json(r.light_dir)},
                     {"background", point_json(r.background)},
                     {"trim_mode", to_string(r.trim_mode)}};
    json seeds = json::array();
    for (const auto& p : s.seeds) seeds.push_back(point_json(p));
    doc["seeds"] = seeds;
    const auto& c = s.integrator;
    doc["integrator"] = {{"method", c.method},   {"mode", flow::to_string(c.mode)}, {"h0", c.h0},
                         {"tol", c.tol},         {"t_max", c.t_max},                {"max_samples", c.max_samples},
                         {"precision", flow::to_string(c.precision)}};
    doc["tubes"] = {{"radius", s.tube_radius}};
    json runs = json::array();
    for (const auto& run : s.experiment_runs)
        runs.push_back({{"method", run.method}, {"mode", flow::to_string(run.mode)}, {"params", run.params}});
    doc["experiment"] = {{"runs", runs}};
    if (s.reference_step) doc["experiment"]["reference_step"] = *s.reference_step;
    return doc;
}

Scene load_scene(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
    return scene_from_json(doc, path.parent_path());
}

json streamlines_to_json(const std::vector<flow::Streamline>& lines) {
    json out = json::array();
    for (const auto& l : lines) {
        json samples = json::array();
        for (const auto& s : l.samples) samples.push_back({{"t", s.t}, {"x", s.x[0]}, {"y", s.x[1]}, {"z", s.x[2]}});
        out.push_back({{"seed", point_json(l.seed)}, {"termination", flow::to_string(l.termination)}, {"samples", samples}});
    }
    return out;
}

std::vector<flow::Streamline> streamlines_from_json(const json& doc) {
    if (!doc.is_array()) throw FormatError("streamlines: expected an array");
    std::vector<flow::Streamline> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string w = "streamlines[" + std::to_string(i) + "]";
        const json& v = object(doc[i], w);
        for (const char* k : {"seed", "termination", "samples"})
            if (!v.contains(k)) throw FormatError(w + ": missing '" + k + "'");
        flow::Streamline l;
        l.seed = point(v["seed"], w + ".seed");
        l.termination = flow::termination_from_string(text(v["termination"], w + ".termination"));
        if (!v["samples"].is_array()) throw FormatError(w + ".samples: expected an array");
        for (const auto& s : v["samples"]) {
            object(s, w + ".samples");
            for (const char* k : {"t", "x", "y", "z"})
                if (!s.contains(k)) throw FormatError(w + ".samples: missing '" + k + "'");
            l.samples.push_back({number(s["t"], w), {number(s["x"], w), number(s["y"], w), number(s["z"], w)}});
        }
        out.push_back(std::move(l));
    }
    return out;
}

SyntheticSpec synthetic_spec_from_json(const json& doc) {
    const std::string w = "spec";
    object(doc, w);
    SyntheticSpec s;
    opt(doc, "kind", w, [&](const json& x, const std::string& p) { s.kind = synthetic_kind_from_string(text(x, p)); });
    opt(doc, "levels", w, [&](const json& x, const std::string& p) {
        s.levels = static_cast<int>(integer(x, p));
        if (s.levels < 0 || s.levels > 20) throw ValidationError(p + ": must be in [0, 20]");
    });
    opt(doc, "degrees", w, [&](const json& x, const std::string& p) {
        if (!x.is_array() || x.size() != 3) throw FormatError(p + ": expected [p1, p2, p3]");
        for (int a = 0; a < 3; ++a) {
            s.degrees.p[a] = static_cast<int>(integer(x[a], p));
            if (s.degrees.p[a] < 0 || s.degrees.p[a] > 8) throw ValidationError(p + ": degrees must be in [0, 8]");
        }
    });
    opt(doc, "field", w, [&](const json& f, const std::string& p) {
        object(f, p);
        auto& a = s.field;
        opt(f, "kind", p, [&](const json& x, const std::string& q) { a.kind = analytic_kind_from_string(text(x, q)); });
        opt(f, "center", p, [&](const json& x, const std::string& q) { a.center = point(x, q); });
        opt(f, "scale", p, [&](const json& x, const std::string& q) { a.scale = number(x, q); });
        opt(f, "gradient", p, [&](const json& x, const std::string& q) { a.gradient = point(x, q); });
        opt(f, "drift", p, [&](const json& x, const std::string& q) { a.drift = number(x, q); });
        opt(f, "constant", p, [&](const json& x, const std::string& q) {
            if (!x.is_array() || x.empty()) throw FormatError(q + ": expected a non-empty array");
            a.constant.clear();
            for (const auto& c : x) a.constant.push_back(number(c, q));
        });
    });
    opt(doc, "domain", w, [&](const json& x, const std::string& p) {
        if (!x.is_array() || x.size() != 3) throw FormatError(p + ": expected [[x0,x1],[y0,y1],[z0,z1]]");
        for (int a = 0; a < 3; ++a) {
            if (!x[a].is_array() || x[a].size() != 2) throw FormatError(p + ": expected [[x0,x1],[y0,y1],[z0,z1]]");
            s.domain.lo[a] = number(x[a][0], p);
            s.domain.hi[a] = number(x[a][1], p);
            if (!(s.domain.hi[a] > s.domain.lo[a])) throw ValidationError(p + ": empty interval");
        }
    });
    opt(doc, "base_cells", w, [&](const json& x, const std::string& p) {
        s.base_cells = static_cast<int>(integer(x, p));
        if (s.base_cells < 0 || s.base_cells > 256) throw ValidationError(p + ": must be in [0, 256]");
    });
    opt(doc, "focus", w, [&](const json& x, const std::string& p) { s.focus = point(x, p); });
    opt(doc, "focus_radius", w, [&](const json& x, const std::string& p) { s.focus_radius = number(x, p); });
    return s;
}

}  // namespace lrvis::io
