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
#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "unfurl/mesh_io.hpp"
#include "unfurl/pipeline.hpp"
#include "unfurl/synthetic.hpp"

namespace
{

std::vector<unfurl::Algorithm> parse_algorithms(const std::string& list)
{
    std::vector<unfurl::Algorithm> out;
    std::string item;
    std::istringstream ss(list);
    while (std::getline(ss, item, ',')) {
        std::transform(item.begin(), item.end(), item.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (item == "lscm") out.push_back(unfurl::Algorithm::LSCM);
        else if (item == "abf") out.push_back(unfurl::Algorithm::ABF);
        else if (item == "mm") out.push_back(unfurl::Algorithm::MM);
        else if (item == "none") return {};
        else throw unfurl::ConfigError("unknown algorithm: " + item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{
        "unfurl: flatten triangulated surface patches (ABF, LSCM, mass-spring), "
        "measure the distortion, and render comparison images"};

    std::vector<std::string> inputs;
    app.add_option("meshes", inputs, "Input meshes (.obj/.ply)");

    std::string algorithms = "abf,lscm,mm";
    app.add_option("--algorithms", algorithms,
                   "Comma list from {lscm,abf,mm}, or 'none' to skip flattening")
        ->capture_default_str();

    std::string out_dir = "out";
    app.add_option("--out-dir", out_dir, "Output directory")->capture_default_str();

    double resolution = 50.0;
    app.add_option("--resolution", resolution, "Raster resolution, pixels per UV unit")
        ->capture_default_str();

    std::vector<std::string> synthetic;
    app.add_option("--synthetic", synthetic,
                   "Generate a synthetic mesh: <plane|cylinder_sector|hemisphere_cap|"
                   "ripple> <n>; it is written to the output directory and used "
                   "as an input")
        ->expected(2);

    std::int64_t dump_trajectory = 0;
    app.add_option("--dump-trajectory", dump_trajectory,
                   "Write an OBJ snapshot of the MM system every k steps");

    unfurl::MMConfig mm;
    app.add_option("--mm-vertex-mass", mm.vertex_mass, "MM: mass per vertex")
        ->capture_default_str();
    app.add_option("--mm-stiffness", mm.stiffness, "MM: spring constant")
        ->capture_default_str();
    app.add_option("--mm-damping", mm.damping, "MM: velocity damping coefficient")
        ->capture_default_str();
    app.add_option("--mm-gravity", mm.gravity, "MM: plane-ward acceleration")
        ->capture_default_str();
    app.add_option("--mm-timestep", mm.timestep, "MM: integrator timestep")
        ->capture_default_str();
    app.add_option("--mm-ke-threshold", mm.ke_threshold,
                   "MM: kinetic-energy stop threshold per vertex")
        ->capture_default_str();
    app.add_option("--mm-max-steps", mm.max_steps, "MM: step limit")
        ->capture_default_str();
    app.add_option("--mm-restitution", mm.collision_restitution,
                   "MM: plane collision restitution in [0,1]")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // config errors exit 1 (0 stays 0 for --help)
    }

    try {
        unfurl::RunConfig config;
        config.out_dir = out_dir;
        config.resolution = resolution;
        config.mm = mm;
        config.dump_trajectory_every = dump_trajectory;
        config.algorithms = parse_algorithms(algorithms);
        for (const auto& path : inputs) {
            config.inputs.emplace_back(path);
        }

        if (!synthetic.empty()) {
            auto kind = unfurl::synthetic_kind_from_string(synthetic[0]);
            const int n = std::stoi(synthetic[1]);
            auto mesh = unfurl::generate_synthetic(kind, n);
            std::filesystem::create_directories(config.out_dir);
            auto path = config.out_dir /
                        (unfurl::to_string(kind) + "_" + std::to_string(n) + ".obj");
            unfurl::save_obj(mesh, path);
            std::cout << "wrote " << path.string() << "\n";
            config.inputs.push_back(path);
        }

        if (config.algorithms.empty()) {
            return 0;  // generation-only run
        }

        auto report = unfurl::run_pipeline(config);
        std::cout << unfurl::report_to_text(report);
        std::cout << "report: " << (config.out_dir / "report.json").string() << "\n";
        for (const auto& r : report.results) {
            if (!r.ok) {
                std::cerr << r.mesh_name << " x " << unfurl::to_string(r.algorithm)
                          << " failed at " << r.failure->stage << ": "
                          << r.failure->message << "\n";
            }
        }
        return unfurl::exit_code_for(report);
    } catch (const unfurl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
