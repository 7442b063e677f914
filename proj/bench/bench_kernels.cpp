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

// Serial reference vs OpenMP timings for every data-parallel kernel plus
// the rasterizer fill. The two backends are bit-identical by construction;
// this target answers only whether the parallel path is worth it per size.

#include <benchmark/benchmark.h>

#include "unfurl/kernels.hpp"
#include "unfurl/mass_spring.hpp"
#include "unfurl/mesh.hpp"
#include "unfurl/raster.hpp"
#include "unfurl/synthetic.hpp"

using namespace unfurl;
using kernels::Backend;

namespace
{

Backend backend_of(const benchmark::State& state)
{
    return state.range(1) == 0 ? Backend::Serial : Backend::OpenMP;
}

const char* grid_label = "n(grid side)/backend(0=serial,1=omp)";

void bench_spring_forces(benchmark::State& state)
{
    auto mesh = generate_synthetic(SyntheticKind::Ripple, static_cast<int>(state.range(0)));
    auto sys = build_spring_system(mesh);
    std::vector<Vec3> forces(sys.positions.size());
    for (auto _ : state) {
        kernels::spring_forces(sys.positions, sys.velocities, sys.springs, sys.adjacency,
                               sys.config.stiffness, sys.config.damping,
                               sys.config.gravity, sys.config.vertex_mass, forces,
                               backend_of(state));
        benchmark::DoNotOptimize(forces.data());
    }
    state.SetLabel(grid_label);
}

void bench_mm_step(benchmark::State& state)
{
    auto mesh = generate_synthetic(SyntheticKind::Ripple, static_cast<int>(state.range(0)));
    auto sys = build_spring_system(mesh);
    for (auto _ : state) {
        step(sys, backend_of(state));
    }
    state.SetLabel(grid_label);
}

void bench_face_stretch(benchmark::State& state)
{
    auto mesh = generate_synthetic(SyntheticKind::HemisphereCap,
                                   static_cast<int>(state.range(0)));
    std::vector<Vec2> uv;
    for (const auto& v : mesh.vertices()) {
        uv.push_back({v.x * 1.1, v.y * 0.9 + 0.05 * v.z});
    }
    std::vector<kernels::FaceStretch> out(mesh.face_count());
    for (auto _ : state) {
        kernels::face_stretch(mesh.vertices(), uv, mesh.faces(), out, backend_of(state));
        benchmark::DoNotOptimize(out.data());
    }
    state.SetLabel(grid_label);
}

void bench_corner_angles(benchmark::State& state)
{
    auto mesh = generate_synthetic(SyntheticKind::Ripple, static_cast<int>(state.range(0)));
    std::vector<double> angles(3 * mesh.face_count());
    for (auto _ : state) {
        kernels::corner_angles(mesh.vertices(), mesh.faces(), angles, backend_of(state));
        benchmark::DoNotOptimize(angles.data());
    }
    state.SetLabel(grid_label);
}

void bench_rasterize(benchmark::State& state)
{
    auto mesh = generate_synthetic(SyntheticKind::Plane, static_cast<int>(state.range(0)));
    UVMap uv;
    for (const auto& v : mesh.vertices()) {
        uv.uv.push_back({v.x, v.y});
    }
    for (auto _ : state) {
        auto img = rasterize_texture(mesh, uv, 40.0, backend_of(state));
        benchmark::DoNotOptimize(img.image.pixels.data());
    }
    state.SetLabel(grid_label);
}

void grid_args(benchmark::internal::Benchmark* b)
{
    for (int n : {20, 60, 120}) {
        b->Args({n, 0});
        b->Args({n, 1});
    }
}

BENCHMARK(bench_spring_forces)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(bench_mm_step)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(bench_face_stretch)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(bench_corner_angles)->Apply(grid_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(bench_rasterize)->Apply(grid_args)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
