// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#include "lrvis/server/service.hpp"

#include <cmath>
#include <limits>

#include "httplib.h"
#include "lrvis/core/error.hpp"
#include "lrvis/core/parallel.hpp"
#include "lrvis/flow/tubes.hpp"
#include "lrvis/io/image_io.hpp"
#include "lrvis/io/scene.hpp"
#include "lrvis/volren/raycast.hpp"

namespace lrvis::server {
namespace {

using nlohmann::json;

// Thrown inside handlers to produce a specific status.
struct HttpError {
    int status;
    std::string kind;
    std::string message;
    std::optional<std::size_t> seed_index;
};

Response json_response(int status, const json& body) { return {status, "application/json", body.dump()}; }

Response error_response(const HttpError& e) {
    json body = {{"error", {{"kind", e.kind}, {"message", e.message}}}};
    if (e.seed_index) body["seed_index"] = *e.seed_index;
    return json_response(e.status, body);
}

template <class F>
Response guarded(F&& handler) {
    try {
        return handler();
    } catch (const HttpError& e) {
        return error_response(e);
    } catch (const json::exception& e) {
        return error_response({400, "format", e.what(), std::nullopt});
    } catch (const FormatError& e) {
        return error_response({400, "format", e.what(), std::nullopt});
    } catch (const ValidationError& e) {
        return error_response({400, "validation", e.what(), std::nullopt});
    } catch (const StructureError& e) {
        return error_response({400, "structure", e.what(), std::nullopt});
    } catch (const NumericError& e) {
        return error_response({422, "numeric", e.what(), std::nullopt});
    } catch (const std::exception& e) {
        return error_response({500, "internal", e.what(), std::nullopt});
    }
}

io::Scene parse_scene(const std::string& body) {
    const json doc = json::parse(body);
    // Paths from clients are never opened; the dataset and mesh are fixed.
    json clean = doc;
    if (clean.is_object()) {
        clean.erase("dataset");
        clean.erase("trim");
    }
    return io::scene_from_json(clean);
}

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

class Slot {
public:
    explicit Slot(std::counting_semaphore<64>& s) : s_(s) { s_.acquire(); }
    ~Slot() { s_.release(); }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;

private:
    std::counting_semaphore<64>& s_;
};

std::string to_string_body(const std::vector<std::uint8_t>& bytes) { return {bytes.begin(), bytes.end()}; }

}  // namespace

RenderService::RenderService(const lr::LRSplineVolume& vol, ServiceConfig config, std::optional<TriangleMesh> trim)
    : field_(std::make_shared<accel::FieldEvaluator>(vol)),
      config_(config),
      slots_(std::clamp<std::ptrdiff_t>(config.max_concurrent, 1, 64)) {
    if (config_.workers == 0) config_.workers = default_worker_count();
    if (field_->range_dim() == 3) vector_ = std::make_unique<flow::SplineVectorField>(field_);
    if (trim) trim_.emplace(std::move(*trim));

    // Value (or magnitude) range observed on a regular sample grid.
    const Box3& dom = field_->domain();
    const int n = 33;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    std::vector<double> v(static_cast<std::size_t>(field_->range_dim()));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const Vec3 u(i / double(n - 1), j / double(n - 1), k / double(n - 1));
                const Vec3 p = dom.lo + Vec3(u[0] * dom.extent()[0], u[1] * dom.extent()[1], u[2] * dom.extent()[2]);
                if (!field_->eval(p, v)) continue;
                double s = v[0];
                if (v.size() > 1) {
                    s = 0.0;
                    for (double c : v) s += c * c;
                    s = std::sqrt(s);
                }
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
    meta_ = {{"domain", {vec_json(dom.lo), vec_json(dom.hi)}},
             {"degrees", {field_->degrees()[0], field_->degrees()[1], field_->degrees()[2]}},
             {"element_count", field_->element_count()},
             {"range_dim", field_->range_dim()},
             {"scalar_range", {lo, hi}},
             {"speed_range", vector_ ? json::array({lo, hi}) : json(nullptr)},
             {"trim", trim_.has_value()},
             {"max_image", {config_.max_width, config_.max_height}}};
}

Response RenderService::meta() const { return json_response(200, meta_); }

namespace {

void check_image_size(const volren::Camera& cam, const ServiceConfig& cfg) {
    if (cam.width > cfg.max_width || cam.height > cfg.max_height)
        throw HttpError{413, "too-large",
                        "image " + std::to_string(cam.width) + "x" + std::to_string(cam.height) + " exceeds the limit " +
                            std::to_string(cfg.max_width) + "x" + std::to_string(cfg.max_height),
                        std::nullopt};
}

void check_seeds(const std::vector<Vec3>& seeds, const Box3& dom, std::size_t max_seeds) {
    if (seeds.empty()) throw HttpError{400, "validation", "no seeds given", std::nullopt};
    if (seeds.size() > max_seeds)
        throw HttpError{400, "validation", "too many seeds (limit " + std::to_string(max_seeds) + ")", std::nullopt};
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const Vec3& s = seeds[i];
        const bool finite = std::isfinite(s[0]) && std::isfinite(s[1]) && std::isfinite(s[2]);
        if (!finite || !dom.contains_closed(s))
            throw HttpError{400, "validation", "seed " + std::to_string(i) + " is outside the domain", i};
    }
}

}  // namespace

Response RenderService::render(const std::string& body) const {
    return guarded([&] {
        const io::Scene scene = parse_scene(body);
        check_image_size(scene.camera, config_);
        if (!scene.transfer_function) throw HttpError{400, "validation", "scene has no transfer_function", std::nullopt};
        Slot slot(slots_);
        const auto result = volren::render(*field_, scene.camera, *scene.transfer_function, scene.render,
                                           trim_ ? &*trim_ : nullptr, config_.workers);
        return Response{200, "image/png", to_string_body(io::encode_png(result.image))};
    });
}

Response RenderService::streamlines(const std::string& body) const {
    return guarded([&] {
        if (!vector_) throw HttpError{400, "validation", "the dataset is not a vector field", std::nullopt};
        const io::Scene scene = parse_scene(body);
        check_seeds(scene.seeds, field_->domain(), config_.max_seeds);
        Slot slot(slots_);
        const auto lines = flow::integrate_all(*vector_, scene.seeds, scene.integrator, config_.workers);
        return json_response(200, io::streamlines_to_json(lines));
    });
}

Response RenderService::streamline_image(const std::string& body) const {
    return guarded([&] {
        if (!vector_) throw HttpError{400, "validation", "the dataset is not a vector field", std::nullopt};
        const io::Scene scene = parse_scene(body);
        check_image_size(scene.camera, config_);
        check_seeds(scene.seeds, field_->domain(), config_.max_seeds);
        Slot slot(slots_);
        const auto lines = flow::integrate_all(*vector_, scene.seeds, scene.integrator, config_.workers);
        flow::TubeSettings ts;
        ts.radius = scene.tube_radius > 0.0 ? scene.tube_radius : field_->domain().diagonal() / 200.0;
        ts.background = scene.render.background;
        ts.workers = config_.workers;
        const Image img = flow::render_streamlines(lines, *vector_, scene.camera, ts);
        return Response{200, "image/png", to_string_body(io::encode_png(img))};
    });
}

void RenderService::mount(httplib::Server& server) const {
    auto reply = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_content(r.body, r.content_type);
    };
    server.Get("/meta", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, meta()); });
    server.Post("/render", [this, reply](const httplib::Request& req, httplib::Response& res) { reply(res, render(req.body)); });
    server.Post("/streamlines",
                [this, reply](const httplib::Request& req, httplib::Response& res) { reply(res, streamlines(req.body)); });
    server.Post("/streamline_image", [this, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, streamline_image(req.body));
    });
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
}

bool serve(const RenderService& service, const std::string& host, int port) {
    httplib::Server server;
    service.mount(server);
    return server.listen(host, port);
}

}  // namespace lrvis::server
