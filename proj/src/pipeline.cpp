/*
unfurl - surface flattening toolkit

Copyright 2026 The unfurl authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#include "unfurl/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>

#include "unfurl/abf.hpp"
#include "unfurl/lscm.hpp"
#include "unfurl/mesh_io.hpp"
#include "unfurl/metrics.hpp"
#include "unfurl/raster.hpp"

namespace unfurl
{

namespace
{

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

FailureRecord failure_from(const std::exception& e, const std::string& stage)
{
    FailureRecord rec;
    rec.stage = stage;
    rec.message = e.what();
    if (dynamic_cast<const SolverFailure*>(&e)) rec.error_type = "SolverFailure";
    else if (dynamic_cast<const Diverged*>(&e)) rec.error_type = "Diverged";
    else if (dynamic_cast<const NotADisk*>(&e)) rec.error_type = "NotADisk";
    else if (dynamic_cast<const InvalidMesh*>(&e)) rec.error_type = "InvalidMesh";
    else if (dynamic_cast<const ParseError*>(&e)) rec.error_type = "ParseError";
    else if (dynamic_cast<const DegenerateParameterization*>(&e))
        rec.error_type = "DegenerateParameterization";
    else if (dynamic_cast<const MissingTexture*>(&e)) rec.error_type = "MissingTexture";
    else if (dynamic_cast<const EmptyParameterization*>(&e))
        rec.error_type = "EmptyParameterization";
    else if (dynamic_cast<const LengthMismatch*>(&e)) rec.error_type = "LengthMismatch";
    else if (dynamic_cast<const ConfigError*>(&e)) rec.error_type = "ConfigError";
    else rec.error_type = "Error";
    return rec;
}

std::string unique_stem(const std::filesystem::path& path,
                        std::set<std::string>& used)
{
    auto stem = path.stem().string();
    auto candidate = stem;
    int suffix = 2;
    while (!used.insert(candidate).second) {
        candidate = stem + "_" + std::to_string(suffix++);
    }
    return candidate;
}

/** Heatmap range: fixed [0,1] for the area metric, [0,max] otherwise */
double safe_hi(const std::vector<double>& values)
{
    double hi = 0;
    for (auto v : values) {
        hi = std::max(hi, v);
    }
    return hi > 0 ? hi : 1e-12;
}

std::vector<double> per_face_angular(const MetricsReport& m)
{
    std::vector<double> out(m.corner_angle_error.size() / 3);
    for (std::size_t f = 0; f < out.size(); f++) {
        out[f] = m.corner_angle_error[3 * f] + m.corner_angle_error[3 * f + 1] +
                 m.corner_angle_error[3 * f + 2];
    }
    return out;
}

}  // namespace

void RunConfig::validate() const
{
    if (inputs.empty()) {
        throw ConfigError("no input meshes");
    }
    if (algorithms.empty()) {
        throw ConfigError("no algorithms selected");
    }
    if (!(resolution > 0)) {
        throw ConfigError("resolution must be positive");
    }
    if (out_dir.empty()) {
        throw ConfigError("no output directory");
    }
    mm.validate();
}

ComparisonReport run_pipeline(const RunConfig& config)
{
    config.validate();
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec || !std::filesystem::is_directory(config.out_dir)) {
        throw ConfigError("cannot create output directory " + config.out_dir.string());
    }

    ComparisonReport report;
    report.algorithms = config.algorithms;

    std::set<std::string> used_stems;
    for (const auto& input : config.inputs) {
        const auto stem = unique_stem(input, used_stems);
        report.mesh_names.push_back(stem);

        std::optional<TriMesh3> mesh;
        std::optional<FailureRecord> load_failure;
        try {
            mesh = load_mesh(input);
        } catch (const Error& e) {
            load_failure = failure_from(e, "load");
        }

        // Optimal angles and weights are shared by the angular metric of
        // every algorithm on this mesh.
        std::vector<double> phi, weight;
        if (mesh) {
            auto beta = corner_angles_3d(*mesh);
            phi = optimal_angles(beta, *mesh);
            weight.resize(phi.size());
            for (std::size_t c = 0; c < phi.size(); c++) {
                weight[c] = 1.0 / (phi[c] * phi[c]);
            }
        }

        for (auto algorithm : config.algorithms) {
            PairResult pair;
            pair.mesh_name = stem;
            pair.algorithm = algorithm;
            if (load_failure) {
                pair.failure = load_failure;
                report.results.push_back(std::move(pair));
                continue;
            }

            // flatten
            auto t0 = Clock::now();
            std::optional<UVMap> uv;
            try {
                switch (algorithm) {
                    case Algorithm::LSCM:
                        uv = lscm_flatten(*mesh);
                        break;
                    case Algorithm::ABF: {
                        AbfSolution sol;
                        auto res = abf_flatten(*mesh, {}, &sol);
                        pair.diagnostics.abf_iterations = sol.iterations;
                        pair.diagnostics.abf_constraint_residual =
                            sol.constraint_residual_inf;
                        pair.diagnostics.abf_placement_warnings =
                            res.inconsistent_angles.size();
                        uv = std::move(res.uv);
                        break;
                    }
                    case Algorithm::MM: {
                        SimulateStatus status;
                        if (config.dump_trajectory_every > 0) {
                            auto sys = build_spring_system(*mesh, config.mm);
                            auto dump = [&](const SpringSystem& s) {
                                TriMesh3 snapshot(s.positions, mesh->faces());
                                char name[128];
                                std::snprintf(name, sizeof(name), "%s_mm_step%08lld.obj",
                                              stem.c_str(),
                                              static_cast<long long>(s.step_count));
                                save_obj(snapshot, config.out_dir / name);
                            };
                            status = simulate(sys, kernels::default_backend(), dump,
                                              config.dump_trajectory_every);
                            uv = project_to_plane(sys);
                        } else {
                            uv = mm_flatten(*mesh, config.mm, kernels::default_backend(),
                                            &status);
                        }
                        pair.diagnostics.mm_converged = status.converged;
                        pair.diagnostics.mm_plane_residual = status.plane_residual;
                        pair.diagnostics.mm_steps = status.steps;
                        break;
                    }
                }
            } catch (const Error& e) {
                pair.timings.flatten_ms = ms_since(t0);
                pair.failure = failure_from(e, "flatten");
                report.results.push_back(std::move(pair));
                continue;
            }
            pair.timings.flatten_ms = ms_since(t0);

            // metrics
            t0 = Clock::now();
            try {
                pair.metrics = compute_metrics(*mesh, *uv, phi, weight);
                pair.diagnostics.fold_count = pair.metrics->flipped_face_ids.size();
            } catch (const Error& e) {
                pair.timings.metrics_ms = ms_since(t0);
                pair.failure = failure_from(e, "metrics");
                report.results.push_back(std::move(pair));
                continue;
            }
            pair.timings.metrics_ms = ms_since(t0);

            // artifacts: UV mesh, texture image, heatmaps
            t0 = Clock::now();
            try {
                const auto tag = to_string(algorithm);
                auto artifact = [&](const std::string& label, const std::string& name) {
                    pair.artifacts[label] = name;
                };
                {
                    auto name = stem + "_" + tag + "_uv.obj";
                    save_obj(*mesh, *uv, config.out_dir / name);
                    artifact("uv_obj", name);
                }
                if (mesh->has_intensity() || mesh->has_texture()) {
                    auto tex = rasterize_texture(*mesh, *uv, config.resolution);
                    auto name = stem + "_" + tag + "_texture.pgm";
                    write_ppm(tex.image, config.out_dir / name);
                    artifact("texture", name);
                    pair.diagnostics.fold_pixel_count = tex.fold_pixel_count;
                    if (tex.fold_pixel_count > 0) {
                        auto mask_name = stem + "_" + tag + "_foldmask.pgm";
                        write_ppm(tex.fold_mask, config.out_dir / mask_name);
                        artifact("fold_mask", mask_name);
                    }
                }
                if (config.heatmap_angular) {
                    auto values = per_face_angular(*pair.metrics);
                    auto img = heatmap(*mesh, *uv, values, 0.0, safe_hi(values),
                                       config.resolution);
                    auto name = stem + "_" + tag + "_angular.ppm";
                    write_ppm(img, config.out_dir / name);
                    artifact("heatmap_angular", name);
                }
                if (config.heatmap_area) {
                    auto img = heatmap(*mesh, *uv, pair.metrics->face_area_error, 0.0, 1.0,
                                       config.resolution);
                    auto name = stem + "_" + tag + "_area.ppm";
                    write_ppm(img, config.out_dir / name);
                    artifact("heatmap_area", name);
                }
                if (config.heatmap_l2) {
                    auto img = heatmap(*mesh, *uv, pair.metrics->face_l2, 1.0,
                                       std::max(1.0 + 1e-12, safe_hi(pair.metrics->face_l2)),
                                       config.resolution);
                    auto name = stem + "_" + tag + "_l2.ppm";
                    write_ppm(img, config.out_dir / name);
                    artifact("heatmap_l2", name);
                }
            } catch (const Error& e) {
                pair.timings.raster_ms = ms_since(t0);
                pair.failure = failure_from(e, "raster");
                report.results.push_back(std::move(pair));
                continue;
            }
            pair.timings.raster_ms = ms_since(t0);

            pair.ok = true;
            report.results.push_back(std::move(pair));
        }
    }

    std::ofstream json_out(config.out_dir / "report.json", std::ios::binary);
    json_out << report_to_json(report);
    std::ofstream text_out(config.out_dir / "report.txt", std::ios::binary);
    text_out << report_to_text(report);
    return report;
}

int exit_code_for(const ComparisonReport& report)
{
    return report.all_ok() ? 0 : 2;
}

}  // namespace unfurl
