// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <vector>

#include "json.hpp"
#include "lrvis/flow/experiment.hpp"
#include "lrvis/io/synthetic.hpp"
#include "lrvis/volren/raycast.hpp"

namespace lrvis::io {

/// Everything one render, trace or experiment run needs besides the dataset
/// itself. Missing keys keep their defaults; unknown keys are ignored so
/// clients may carry extra state.
///
///   {"dataset": "field.json", "trim": "boundary.stl",
///    "camera": {"eye": [..], "look_at": [..], "up": [..], "fov_y": 0.6, "width": 256, "height": 256},
///    "transfer_function": [{"value": 0, "color": [r, g, b], "alpha": 0}, ..],
///    "render": {"xi", "supersamples", "threshold", "base_step_scale", "step", "mode",
///               "lighting", "light_dir", "background", "trim_mode"},
///    "seeds": [[x, y, z], ..]  or  {"counts": [i, j, k], "lo": [..], "hi": [..]},
///    "integrator": {"method", "mode", "h0", "tol", "t_max", "max_samples", "precision"},
///    "tubes": {"radius"},
///    "experiment": {"runs": [{"method", "mode", "params": [..]}], "reference_step"}}
///
/// Relative paths resolve against the scene file's directory.
struct Scene {
    std::optional<std::filesystem::path> dataset;
    std::optional<std::filesystem::path> trim;
    volren::Camera camera;
    std::optional<volren::TransferFunction> transfer_function;
    volren::RenderSettings render;
    std::vector<Vec3> seeds;
    flow::IntegratorConfig integrator;
    double tube_radius = 0.0;  // 0: domain diagonal / 200
    std::vector<flow::SweepRun> experiment_runs;
    std::optional<double> reference_step;
};

Scene scene_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
nlohmann::json scene_to_json(const Scene& scene);
Scene load_scene(const std::filesystem::path& path);

/// counts[a] points per axis, spanning [lo, hi]; a single point sits at the center.
std::vector<Vec3> grid_seeds(const std::array<int, 3>& counts, const Box3& box);

/// [{"seed": [x, y, z], "termination": "...", "samples": [{"t", "x", "y", "z"}, ..]}, ..]
nlohmann::json streamlines_to_json(const std::vector<flow::Streamline>& lines);
std::vector<flow::Streamline> streamlines_from_json(const nlohmann::json& doc);

/// {"kind", "levels", "degrees", "field": {"kind", "center", "scale", "gradient", "constant",
///  "drift"}, "domain": [[x0, x1], ..], "base_cells", "focus", "focus_radius"}
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& doc);

}  // namespace lrvis::io
