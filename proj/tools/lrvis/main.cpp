// Copyright 2026 The lrvis Authors
// SPDX-License-Identifier: Apache-2.0
//
// lrvis command-line tool: validate, render, streamlines, bench, experiment,
// gen and serve.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lrvis/accel/bench.hpp"
#include "lrvis/accel/field_evaluator.hpp"
#include "lrvis/core/error.hpp"
#include "lrvis/core/parallel.hpp"
#include "lrvis/flow/tubes.hpp"
#include "lrvis/io/dataset.hpp"
#include "lrvis/io/files.hpp"
#include "lrvis/io/image_io.hpp"
#include "lrvis/io/scene.hpp"
#include "lrvis/io/stl.hpp"
#include "lrvis/lr/validate.hpp"
#include "lrvis/server/service.hpp"

namespace fs = std::filesystem;
using namespace lrvis;

namespace {

// Removes every registered output unless the command finishes.
class Outputs {
public:
    void add(const fs::path& p) { paths_.push_back(p); }
    void commit() { paths_.clear(); }
    ~Outputs() {
        std::error_code ec;
        for (const auto& p : paths_) fs::remove(p, ec);
    }

private:
    std::vector<fs::path> paths_;
};

unsigned workers_or_default(unsigned n) { return n > 0 ? n : default_worker_count(); }

lr::LRSplineVolume scene_dataset(const io::Scene& scene, const std::string& override_path) {
    if (!override_path.empty()) return io::load_dataset(override_path);
    if (!scene.dataset) throw ValidationError("scene has no dataset; pass --dataset");
    return io::load_dataset(*scene.dataset);
}

std::unique_ptr<flow::SplineVectorField> vector_field(const lr::LRSplineVolume& vol) {
    auto eval = std::make_shared<accel::FieldEvaluator>(vol);
    return std::make_unique<flow::SplineVectorField>(eval);
}

int cmd_validate(const std::string& path) {
    const std::string text = io::read_text(path);
    lr::LRSplineVolume vol;
    try {
        vol = io::parse_dataset(text);
    } catch (const ValidationError& e) {
        std::cout << "INVALID\n" << e.what() << "\n";
        return 1;
    }
    const auto report = lr::validate(vol);
    std::cout << "OK\n"
              << "elements " << vol.elements.size() << ", functions " << vol.bsplines.size() << ", degrees "
              << vol.degrees[0] << ' ' << vol.degrees[1] << ' ' << vol.degrees[2] << ", range_dim " << vol.range_dim
              << ", partition-of-unity residual " << report.max_pou_residual << "\n";
    return 0;
}

int cmd_render(const std::string& scene_path, const std::string& out, const std::string& dataset, unsigned threads) {
    Outputs outputs;
    const io::Scene scene = io::load_scene(scene_path);
    if (!scene.transfer_function) throw ValidationError("scene has no transfer_function");
    const auto vol = scene_dataset(scene, dataset);
    const accel::FieldEvaluator field(vol);
    std::optional<volren::TrimMesh> trim;
    if (scene.trim) trim.emplace(io::load_stl(*scene.trim));
    const auto result = volren::render(field, scene.camera, *scene.transfer_function, scene.render,
                                       trim ? &*trim : nullptr, workers_or_default(threads));
    outputs.add(out);
    io::write_image(result.image, out);
    outputs.commit();
    std::cerr << "rendered " << scene.camera.width << "x" << scene.camera.height << ", " << result.stats.evaluations
              << " evaluations\n";
    return 0;
}

int cmd_streamlines(const std::string& scene_path, const std::string& out, const std::string& image,
                    const std::string& dataset, unsigned threads) {
    Outputs outputs;
    const io::Scene scene = io::load_scene(scene_path);
    if (scene.seeds.empty()) throw ValidationError("scene has no seeds");
    const auto vol = scene_dataset(scene, dataset);
    const auto field = vector_field(vol);
    const unsigned w = workers_or_default(threads);
    const auto lines = flow::integrate_all(*field, scene.seeds, scene.integrator, w);
    outputs.add(out);
    io::write_atomic(out, io::streamlines_to_json(lines).dump(1) + "\n");
    if (!image.empty()) {
        flow::TubeSettings ts;
        ts.radius = scene.tube_radius > 0.0 ? scene.tube_radius : field->domain().diagonal() / 200.0;
        ts.background = scene.render.background;
        ts.workers = w;
        outputs.add(image);
        io::write_image(flow::render_streamlines(lines, *field, scene.camera, ts), image);
    }
    outputs.commit();
    std::cerr << lines.size() << " streamlines, " << flow::total_field_evals(lines) << " field evaluations\n";
    return 0;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_bench(const std::string& path, const std::string& structures, const std::string& grids, std::size_t points,
              int reps, const std::string& out) {
    Outputs outputs;
    const auto vol = io::load_dataset(path);
    accel::BenchOptions opts;
    if (!structures.empty()) opts.structures = split(structures);
    if (!grids.empty()) {
        opts.grids.clear();
        for (const auto& g : split(grids)) {
            try {
                opts.grids.push_back(std::stoi(g));
            } catch (const std::exception&) {
                throw ValidationError("--grids: '" + g + "' is not an integer");
            }
        }
    }
    opts.points = points;
    opts.repetitions = reps;
    const auto rows = accel::run_benchmark(accel::Partition::from(vol), opts);
    std::ostringstream csv;
    accel::write_bench_csv(csv, rows);
    if (out.empty()) {
        std::cout << csv.str();
    } else {
        outputs.add(out);
        io::write_atomic(out, csv.str());
    }
    outputs.commit();
    return 0;
}

int cmd_experiment(const std::string& scene_path, const std::string& out, const std::string& dataset, unsigned threads) {
    Outputs outputs;
    const io::Scene scene = io::load_scene(scene_path);
    if (scene.seeds.empty()) throw ValidationError("scene has no seeds");
    if (scene.experiment_runs.empty()) throw ValidationError("scene has no experiment runs");
    const auto vol = scene_dataset(scene, dataset);
    const auto field = vector_field(vol);
    const unsigned w = workers_or_default(threads);
    flow::ReferenceOptions ro;
    ro.h = scene.reference_step;
    ro.workers = w;
    const auto reference = flow::reference_solution(*field, scene.seeds, scene.integrator.t_max, ro);
    flow::ExperimentConfig cfg;
    cfg.runs = scene.experiment_runs;
    cfg.t_max = scene.integrator.t_max;
    cfg.max_samples = std::max<std::size_t>(scene.integrator.max_samples, 2);
    cfg.precision = scene.integrator.precision;
    cfg.workers = w;
    const auto rows = flow::efficiency_experiment(*field, scene.seeds, reference, cfg);
    std::ostringstream csv;
    flow::write_experiment_csv(csv, rows);
    if (out.empty()) {
        std::cout << csv.str();
    } else {
        outputs.add(out);
        io::write_atomic(out, csv.str());
    }
    outputs.commit();
    return 0;
}

int cmd_gen(const std::string& spec_path, const std::string& out) {
    Outputs outputs;
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(io::read_text(spec_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(spec_path + ": " + e.what());
    }
    const auto vol = io::generate_synthetic(io::synthetic_spec_from_json(doc));
    outputs.add(out);
    io::save_dataset(vol, out);
    outputs.commit();
    std::cerr << "wrote " << vol.elements.size() << " elements, " << vol.bsplines.size() << " functions\n";
    return 0;
}

int cmd_serve(const std::string& dataset, const std::string& trim, const std::string& host, int port, unsigned threads,
              int max_concurrent) {
    server::ServiceConfig cfg;
    cfg.workers = workers_or_default(threads);
    cfg.max_concurrent = max_concurrent;
    std::optional<TriangleMesh> mesh;
    if (!trim.empty()) mesh = io::load_stl(trim);
    const server::RenderService svc(io::load_dataset(dataset), cfg, std::move(mesh));
    std::cerr << "serving " << dataset << " on http://" << host << ":" << port << "\n";
    if (!server::serve(svc, host, port)) throw Error("cannot listen on " + host + ":" + std::to_string(port));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lrvis: render and trace LR-spline volumes"};
    app.require_subcommand(1);
    int code = 0;
    unsigned threads = 0;
    std::string dataset_override;

    auto* validate = app.add_subcommand("validate", "Check a dataset and print OK");
    std::string v_path;
    validate->add_option("dataset", v_path, "Dataset JSON")->required();
    validate->callback([&] { code = cmd_validate(v_path); });

    auto* render = app.add_subcommand("render", "Volume-render a scene");
    std::string r_scene, r_out;
    render->add_option("scene", r_scene, "Scene JSON")->required();
    render->add_option("-o,--output", r_out, "Output image (.ppm or .png)")->required();
    render->add_option("--dataset", dataset_override, "Dataset overriding the scene's");
    render->add_option("--threads", threads, "Worker threads (default: LRVIS_THREADS or all cores)");
    render->callback([&] { code = cmd_render(r_scene, r_out, dataset_override, threads); });

    auto* lines = app.add_subcommand("streamlines", "Trace streamlines from a scene's seeds");
    std::string s_scene, s_out, s_image;
    lines->add_option("scene", s_scene, "Scene JSON")->required();
    lines->add_option("-o,--output", s_out, "Streamline JSON")->required();
    lines->add_option("--image", s_image, "Also render the tubes to this image");
    lines->add_option("--dataset", dataset_override, "Dataset overriding the scene's");
    lines->add_option("--threads", threads, "Worker threads");
    lines->callback([&] { code = cmd_streamlines(s_scene, s_out, s_image, dataset_override, threads); });

    auto* bench = app.add_subcommand("bench", "Lookup structure statistics and throughput as CSV");
    std::string b_path, b_structures, b_grids, b_out;
    std::size_t b_points = 100000;
    int b_reps = 5;
    bench->add_option("dataset", b_path, "Dataset JSON")->required();
    bench->add_option("--structures", b_structures, "Comma list of linear,grid,octree,kdtree,forest");
    bench->add_option("--grids", b_grids, "Forest grids per axis, e.g. 1,8,64,512");
    bench->add_option("--points", b_points, "Lookup points");
    bench->add_option("--repetitions", b_reps, "Timed repetitions (median reported)");
    bench->add_option("-o,--output", b_out, "CSV file (default: stdout)");
    bench->callback([&] { code = cmd_bench(b_path, b_structures, b_grids, b_points, b_reps, b_out); });

    auto* exp = app.add_subcommand("experiment", "Work-versus-error table for the scene's runs as CSV");
    std::string e_scene, e_out;
    exp->add_option("scene", e_scene, "Scene JSON")->required();
    exp->add_option("-o,--output", e_out, "CSV file (default: stdout)");
    exp->add_option("--dataset", dataset_override, "Dataset overriding the scene's");
    exp->add_option("--threads", threads, "Worker threads");
    exp->callback([&] { code = cmd_experiment(e_scene, e_out, dataset_override, threads); });

    auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
    std::string g_spec, g_out;
    gen->add_option("spec", g_spec, "Generator spec JSON")->required();
    gen->add_option("-o,--output", g_out, "Dataset JSON")->required();
    gen->callback([&] { code = cmd_gen(g_spec, g_out); });

    auto* serve = app.add_subcommand("serve", "HTTP render service");
    std::string sv_dataset, sv_trim, sv_host = "127.0.0.1";
    int sv_port = 8080, sv_conc = 1;
    serve->add_option("--dataset", sv_dataset, "Dataset JSON")->required();
    serve->add_option("--port", sv_port, "Port");
    serve->add_option("--host", sv_host, "Bind address");
    serve->add_option("--trim", sv_trim, "Trim mesh (STL)");
    serve->add_option("--threads", threads, "Worker threads per request");
    serve->add_option("--max-concurrent", sv_conc, "Requests rendering at once");
    serve->callback([&] { code = cmd_serve(sv_dataset, sv_trim, sv_host, sv_port, threads, sv_conc); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return code;
}
