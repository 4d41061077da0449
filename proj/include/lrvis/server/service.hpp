// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <semaphore>
#include <string>

#include "json.hpp"
#include "lrvis/accel/field_evaluator.hpp"
#include "lrvis/core/mesh.hpp"
#include "lrvis/flow/field.hpp"
#include "lrvis/volren/trim.hpp"

namespace httplib {
class Server;
}

namespace lrvis::server {

struct ServiceConfig {
    int max_width = 1920;
    int max_height = 1080;
    std::size_t max_seeds = 10000;
    unsigned workers = 0;        // 0: default_worker_count()
    std::ptrdiff_t max_concurrent = 1;  // renders running at once
};

struct Response {
    int status = 200;
    std::string content_type;
    std::string body;
};

/// Stateless request handlers over one fixed dataset. Error responses carry
/// {"error": {"kind", "message"}} plus "seed_index" when a seed is at fault.
class RenderService {
public:
    RenderService(const lr::LRSplineVolume& vol, ServiceConfig config = {}, std::optional<TriangleMesh> trim = std::nullopt);

    Response meta() const;
    Response render(const std::string& body) const;
    Response streamlines(const std::string& body) const;
    Response streamline_image(const std::string& body) const;

    /// Routes: GET /meta, POST /render, POST /streamlines, POST /streamline_image.
    void mount(httplib::Server& server) const;

    const accel::FieldEvaluator& field() const { return *field_; }

private:
    std::shared_ptr<const accel::FieldEvaluator> field_;
    std::unique_ptr<flow::SplineVectorField> vector_;
    std::optional<volren::TrimMesh> trim_;
    ServiceConfig config_;
    nlohmann::json meta_;
    mutable std::counting_semaphore<64> slots_;
};

/// Blocks until the server stops. Returns false when the port cannot be bound.
bool serve(const RenderService& service, const std::string& host, int port);

}  // namespace lrvis::server
