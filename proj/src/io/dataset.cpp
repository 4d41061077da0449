// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/io/dataset.hpp"

#include "lrvis/core/error.hpp"
#include "lrvis/io/files.hpp"
#include "lrvis/lr/validate.hpp"

namespace lrvis::io {
namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw FormatError(where + ": missing '" + key + "'");
    return obj.at(key);
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) throw FormatError(where + ": expected a number");
    return v.get<double>();
}

std::vector<double> numbers(const json& v, const std::string& where) {
    if (!v.is_array()) throw FormatError(where + ": expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(number(x, where));
    return out;
}

Vec3 point(const json& v, const std::string& where) {
    const auto xs = numbers(v, where);
    if (xs.size() != 3) throw FormatError(where + ": expected 3 coordinates");
    return {xs[0], xs[1], xs[2]};
}

}  // namespace

lr::LRSplineVolume dataset_from_json(const json& doc) {
    lr::LRSplineVolume vol;
    const auto deg = numbers(field(doc, "degrees", "dataset"), "degrees");
    if (deg.size() != 3) throw FormatError("degrees: expected 3 entries");
    for (int a = 0; a < 3; ++a) {
        if (deg[a] != static_cast<int>(deg[a])) throw FormatError("degrees: expected integers");
        vol.degrees.p[a] = static_cast<int>(deg[a]);
    }
    const json& dom = field(doc, "domain", "dataset");
    if (!dom.is_array() || dom.size() != 3) throw FormatError("domain: expected [[x0,x1],[y0,y1],[z0,z1]]");
    for (int a = 0; a < 3; ++a) {
        const auto r = numbers(dom[a], "domain");
        if (r.size() != 2) throw FormatError("domain: expected [[x0,x1],[y0,y1],[z0,z1]]");
        vol.domain.lo[a] = r[0];
        vol.domain.hi[a] = r[1];
    }
    const json& rd = field(doc, "range_dim", "dataset");
    if (!rd.is_number_integer()) throw FormatError("range_dim: expected an integer");
    vol.range_dim = rd.get<int>();

    const json& fns = field(doc, "bsplines", "dataset");
    if (!fns.is_array()) throw FormatError("bsplines: expected an array");
    static const char* kKnotKeys[3] = {"knots_u", "knots_v", "knots_w"};
    for (std::size_t i = 0; i < fns.size(); ++i) {
        const std::string where = "bspline " + std::to_string(i);
        lr::LRBSpline f;
        for (int a = 0; a < 3; ++a) {
            f.knots[a] = numbers(field(fns[i], kKnotKeys[a], where), where + " " + kKnotKeys[a]);
            if (vol.degrees[a] >= 0 && f.knots[a].size() != static_cast<std::size_t>(vol.degrees[a]) + 2)
                throw FormatError(where + ": " + kKnotKeys[a] + " must have degree+2 entries");
        }
        f.coef = numbers(field(fns[i], "coef", where), where + " coef");
        f.gamma = number(field(fns[i], "gamma", where), where + " gamma");
        vol.bsplines.push_back(std::move(f));
    }

    if (doc.contains("elements")) {
        const json& els = doc.at("elements");
        if (!els.is_array()) throw FormatError("elements: expected an array");
        for (std::size_t i = 0; i < els.size(); ++i) {
            const std::string where = "element " + std::to_string(i);
            vol.elements.push_back({{point(field(els[i], "lo", where), where + " lo"),
                                     point(field(els[i], "hi", where), where + " hi")},
                                    {}});
        }
    }
    return vol;
}

json dataset_to_json(const lr::LRSplineVolume& vol) {
    json doc;
    doc["degrees"] = {vol.degrees[0], vol.degrees[1], vol.degrees[2]};
    doc["domain"] = json::array();
    for (int a = 0; a < 3; ++a) doc["domain"].push_back({vol.domain.lo[a], vol.domain.hi[a]});
    doc["range_dim"] = vol.range_dim;
    json fns = json::array();
    for (const auto& f : vol.bsplines)
        fns.push_back({{"knots_u", f.knots[0]},
                       {"knots_v", f.knots[1]},
                       {"knots_w", f.knots[2]},
                       {"coef", f.coef},
                       {"gamma", f.gamma}});
    doc["bsplines"] = std::move(fns);
    json els = json::array();
    for (const auto& e : vol.elements)
        els.push_back({{"lo", {e.box.lo[0], e.box.lo[1], e.box.lo[2]}}, {"hi", {e.box.hi[0], e.box.hi[1], e.box.hi[2]}}});
    doc["elements"] = std::move(els);
    return doc;
}

lr::LRSplineVolume parse_dataset(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("malformed dataset JSON: ") + e.what());
    }
    lr::LRSplineVolume vol = dataset_from_json(doc);
    if (vol.elements.empty()) {
        // Header and knot problems must surface before elements are derived.
        const lr::ValidationReport pre = lr::validate(vol);
        if (!pre.has(lr::IssueKind::NoElements)) throw ValidationError(pre.summary());
        vol.elements = lr::derive_elements(vol);
    }
    const lr::ValidationReport report = lr::validate(vol);
    if (!report.ok()) throw ValidationError(report.summary());
    return lr::bind_supports(std::move(vol));
}

lr::LRSplineVolume load_dataset(const std::filesystem::path& path) { return parse_dataset(read_text(path)); }

std::string dump_dataset(const lr::LRSplineVolume& vol) { return dataset_to_json(vol).dump(1) + "\n"; }

void save_dataset(const lr::LRSplineVolume& vol, const std::filesystem::path& path) {
    write_atomic(path, dump_dataset(vol));
}

}  // namespace lrvis::io
