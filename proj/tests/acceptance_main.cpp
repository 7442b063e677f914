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

// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits non-zero if any criterion fails.

#include <json.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "test_helpers.hpp"
#include "unfurl/abf.hpp"
#include "unfurl/lscm.hpp"
#include "unfurl/mass_spring.hpp"
#include "unfurl/mesh_io.hpp"
#include "unfurl/metrics.hpp"
#include "unfurl/pipeline.hpp"
#include "unfurl/raster.hpp"
#include "unfurl/synthetic.hpp"

using namespace unfurl;

namespace
{

int g_failures = 0;

struct Check {
    bool ok{true};
    std::ostringstream detail;

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

void criterion(int id, const std::string& name, const std::function<void(Check&)>& fn)
{
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        fn(check);
    } catch (const std::exception& e) {
        check.ok = false;
        check.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", check.ok ? "PASS" : "FAIL", id,
                name.c_str(), secs, check.detail.str().empty() ? "" : " -- ",
                check.detail.str().c_str());
    std::fflush(stdout);
    if (!check.ok) {
        g_failures++;
    }
}

std::vector<double> phi_weights(const std::vector<double>& phi)
{
    std::vector<double> w(phi.size());
    for (std::size_t c = 0; c < w.size(); c++) {
        w[c] = 1.0 / (phi[c] * phi[c]);
    }
    return w;
}

MetricsReport metrics_for(const TriMesh3& mesh, const UVMap& uv)
{
    auto beta = corner_angles_3d(mesh);
    auto phi = optimal_angles(beta, mesh);
    return compute_metrics(mesh, uv, phi, phi_weights(phi));
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fmt(const char* f, double a, double b = 0, double c = 0)
{
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

// 1. triangle_stretch vs an independent FD-Jacobian + SVD oracle
void criterion_1(Check& check)
{
    const auto t0 = std::chrono::steady_clock::now();
    for (int trial = 0; trial < 10000; trial++) {
        auto t = oracle::random_triangle_pair();
        auto ts = triangle_stretch(t.q1, t.q2, t.q3, t.p1, t.p2, t.p3);
        auto [smax, smin] =
            oracle::fd_jacobian_singular_values(t.q1, t.q2, t.q3, t.p1, t.p2, t.p3);
        if (std::abs(ts.sigma_max - smax) > 1e-9 * smax ||
            std::abs(ts.sigma_min - smin) > 1e-9 * std::max(smin, 1e-300)) {
            check.expect(false, fmt("mismatch at trial %g: got %.12g want %.12g",
                                    trial, ts.sigma_max, smax));
            return;
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    check.expect(secs < 5.0, fmt("runtime %.2fs exceeds 5s", secs));
}

// 2. planar grid is recovered isometrically by every algorithm
void criterion_2(Check& check)
{
    const auto t0 = std::chrono::steady_clock::now();
    auto mesh = generate_synthetic(SyntheticKind::Plane, 10);

    auto abf = metrics_for(mesh, abf_flatten(mesh).uv);
    check.expect(abf.l2_mesh <= 1 + 1e-6, fmt("ABF l2 %.9f", abf.l2_mesh));
    check.expect(abf.e_mesh <= 1e-6, fmt("ABF e %.3g", abf.e_mesh));
    check.expect(abf.f_mesh <= 1e-8, fmt("ABF f %.3g", abf.f_mesh));

    auto lscm = metrics_for(mesh, lscm_flatten(mesh));
    check.expect(lscm.l2_mesh <= 1 + 1e-6, fmt("LSCM l2 %.9f", lscm.l2_mesh));
    check.expect(lscm.e_mesh <= 1e-6, fmt("LSCM e %.3g", lscm.e_mesh));
    check.expect(lscm.f_mesh <= 1e-8, fmt("LSCM f %.3g", lscm.f_mesh));

    auto mm = metrics_for(mesh, mm_flatten(mesh));
    check.expect(mm.l2_mesh <= 1.001, fmt("MM l2 %.9f", mm.l2_mesh));
    check.expect(mm.e_mesh <= 1e-3, fmt("MM e %.3g", mm.e_mesh));

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    check.expect(secs < 10.0, fmt("runtime %.2fs exceeds 10s", secs));
}

// 3. quarter cylinder: analytic unroll recovery
void criterion_3(Check& check)
{
    const auto t0 = std::chrono::steady_clock::now();
    const int n = 20;
    auto mesh = generate_synthetic(SyntheticKind::CylinderSector, n);
    auto unroll = oracle::cylinder_unroll(n);

    auto abf_rms = oracle::similarity_rms(abf_flatten(mesh).uv.uv, unroll);
    check.expect(abf_rms <= 1e-3, fmt("ABF unroll RMS %.3g", abf_rms));
    auto lscm_rms = oracle::similarity_rms(lscm_flatten(mesh).uv, unroll);
    check.expect(lscm_rms <= 1e-3, fmt("LSCM unroll RMS %.3g", lscm_rms));

    auto sys = build_spring_system(mesh);
    auto status = simulate(sys);
    check.expect(status.converged, "MM did not converge");
    auto uv = project_to_plane(sys);
    double ss = 0, mean_rest = 0;
    for (const auto& s : sys.springs) {
        const double len = norm(uv.uv[s.j] - uv.uv[s.i]);
        ss += (len - s.rest_length) * (len - s.rest_length);
        mean_rest += s.rest_length;
    }
    mean_rest /= static_cast<double>(sys.springs.size());
    const double rms = std::sqrt(ss / static_cast<double>(sys.springs.size()));
    check.expect(rms <= 0.01 * mean_rest,
                 fmt("MM edge RMS %.3g vs 1%% of %.3g", rms, mean_rest));

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    check.expect(secs < 60.0, fmt("runtime %.2fs exceeds 60s", secs));
}

// 4. qualitative ordering on the cap and ripple meshes
void criterion_4(Check& check)
{
    for (auto kind : {SyntheticKind::HemisphereCap, SyntheticKind::Ripple}) {
        auto mesh = generate_synthetic(kind, 20);
        auto name = to_string(kind);
        auto abf = metrics_for(mesh, abf_flatten(mesh).uv);
        auto lscm = metrics_for(mesh, lscm_flatten(mesh));
        auto mm = metrics_for(mesh, mm_flatten(mesh));

        check.expect(mm.l2_mesh >= abf.l2_mesh,
                     name + fmt(": MM l2 %.5f < ABF l2 %.5f", mm.l2_mesh, abf.l2_mesh));
        check.expect(
            mm.linf_mesh >= abf.linf_mesh,
            name + fmt(": MM linf %.5f < ABF linf %.5f", mm.linf_mesh, abf.linf_mesh));
        const double hi = std::max({abf.f_mesh, lscm.f_mesh, mm.f_mesh});
        const double lo = std::min({abf.f_mesh, lscm.f_mesh, mm.f_mesh});
        check.expect(hi - lo <= 0.15 * hi,
                     name + fmt(": f_mesh spread %.1f%% exceeds 15%% "
                                "(ABF %.6f, LSCM %.6f, MM %.6f)",
                                100.0 * (hi - lo) / hi, abf.f_mesh, lscm.f_mesh) +
                         fmt(" / %.6f", mm.f_mesh));
    }
}

// 5. ABF constraint satisfaction on every converging test mesh
void criterion_5(Check& check)
{
    for (auto kind : {SyntheticKind::Plane, SyntheticKind::CylinderSector,
                      SyntheticKind::HemisphereCap, SyntheticKind::Ripple}) {
        auto mesh = generate_synthetic(kind, 20);
        auto beta = corner_angles_3d(mesh);
        auto phi = optimal_angles(beta, mesh);
        auto sol = abf_solve(mesh, phi, phi_weights(phi));
        if (!sol.converged) {
            check.detail << to_string(kind) << " did not converge (not counted); ";
            continue;
        }
        // recompute all three constraint families from the solved angles
        const auto& a = sol.angles.alpha;
        auto conn = MeshConnectivity::build(mesh);
        double face_res = 0, plan_res = 0, len_res = 0;
        for (std::size_t f = 0; f < mesh.face_count(); f++) {
            face_res = std::max(
                face_res, std::abs(a[3 * f] + a[3 * f + 1] + a[3 * f + 2] - kPi));
        }
        for (std::uint32_t v = 0; v < mesh.vertex_count(); v++) {
            if (conn.vertex_on_boundary(v)) {
                continue;
            }
            double sum = 0, p1 = 1, p2 = 1;
            for (auto he : conn.wheel(v)) {
                auto f = he / 3;
                auto j = he % 3;
                sum += a[3 * f + j];
                p1 *= std::sin(a[3 * f + (j + 1) % 3]);
                p2 *= std::sin(a[3 * f + (j + 2) % 3]);
            }
            plan_res = std::max(plan_res, std::abs(sum - 2 * kPi));
            len_res = std::max(len_res, std::abs(p1 - p2));
        }
        check.expect(face_res <= 1e-7,
                     to_string(kind) + fmt(": face-sum residual %.3g", face_res));
        check.expect(plan_res <= 1e-7,
                     to_string(kind) + fmt(": vertex-sum residual %.3g", plan_res));
        check.expect(len_res <= 1e-7,
                     to_string(kind) + fmt(": sine-product residual %.3g", len_res));
    }
}

// 6. failure handling through the CLI: exit code 2 with a well-formed report
void criterion_6(Check& check, const std::string& cli)
{
    if (cli.empty()) {
        check.expect(false, "CLI binary path not provided (argv[1])");
        return;
    }
    oracle::TempDir dir("acceptance_c6");
    auto bad = dir.path / "collapsed.obj";
    save_obj(oracle::collapsed_grid(4), bad);
    auto out = dir.path / "out";
    std::string cmd = cli + " " + bad.string() + " --out-dir " + out.string() +
                      " --resolution 5 > " + (dir.path / "log.txt").string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    check.expect(WIFEXITED(rc) && WEXITSTATUS(rc) == 2,
                 fmt("exit code %g (want 2)", WIFEXITED(rc) ? WEXITSTATUS(rc) : -1));

    auto j = nlohmann::json::parse(slurp(out / "report.json"));
    check.expect(j["results"].size() == 3, "report must contain all three rows");
    bool lscm_failed = false;
    int rows = 0;
    for (const auto& r : j["results"]) {
        rows++;
        if (r["algorithm"] == "LSCM") {
            lscm_failed = r["status"] == "failed";
        }
        check.expect(r["status"] == "ok" || r["status"] == "failed",
                     "row status must be ok or failed");
    }
    check.expect(lscm_failed, "LSCM row must be a failure record");
    auto text = slurp(out / "report.txt");
    check.expect(text.find("---") != std::string::npos,
                 "failed cells must render as ---");
}

// 7. fold diagnostics: planted fold set and raster fold mask
void criterion_7(Check& check)
{
    // reflect one vertex of a two-triangle square across the diagonal
    TriMesh3 mesh({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}},
                  {{0, 1, 2}, {0, 2, 3}},
                  std::vector<double>{0.5, 0.5, 0.5, 0.5});
    UVMap uv;
    uv.uv = {{0, 0}, {1, 0}, {1, 1}, {0.8, 0.6}};  // vertex 3 pulled inside face 0
    // planted: face 1 flips orientation
    const double a0 = signed_area(uv.uv[0], uv.uv[1], uv.uv[2]);
    const double a1 = signed_area(uv.uv[0], uv.uv[2], uv.uv[3]);
    check.expect(a0 > 0 && a1 < 0, "construction must flip exactly face 1");
    auto folds = detect_folds(mesh, uv);
    check.expect(folds == std::vector<std::uint32_t>{1},
                 fmt("detect_folds returned %g faces (want exactly face 1)",
                     static_cast<double>(folds.size())));

    const double res = 100.0;
    auto out = rasterize_texture(mesh, uv, res);
    check.expect(out.fold_pixel_count > 0, "fold mask is empty");

    // oracle: pixels strictly interior to both faces must be masked
    auto inside = [&](const Vec2& p, const Face& f, double margin) {
        const auto& a = uv.uv[f[0]];
        const auto& b = uv.uv[f[1]];
        const auto& c = uv.uv[f[2]];
        const double area = signed_area(a, b, c);
        const double w0 = signed_area(p, b, c) / area;
        const double w1 = signed_area(a, p, c) / area;
        const double w2 = signed_area(a, b, p) / area;
        return w0 > margin && w1 > margin && w2 > margin;
    };
    std::size_t strict_overlap = 0, strict_masked = 0;
    for (int y = 0; y < out.image.height; y++) {
        for (int x = 0; x < out.image.width; x++) {
            const Vec2 p{out.image.origin.x + (x + 0.5) / res,
                         out.image.origin.y + (out.image.height - 1 - y + 0.5) / res};
            if (inside(p, mesh.faces()[0], 0.02) && inside(p, mesh.faces()[1], 0.02)) {
                strict_overlap++;
                strict_masked += out.fold_mask.at(x, y) == 255;
            } else if (!inside(p, mesh.faces()[0], -0.02) ||
                       !inside(p, mesh.faces()[1], -0.02)) {
                // pixels clearly outside either face must not be masked
                check.expect(out.fold_mask.at(x, y) == 0,
                             "mask extends outside the overlap");
            }
        }
    }
    check.expect(strict_overlap > 100, "oracle overlap unexpectedly small");
    check.expect(strict_masked == strict_overlap,
                 fmt("only %g of %g strict-overlap pixels masked",
                     static_cast<double>(strict_masked),
                     static_cast<double>(strict_overlap)));
}

// 8. bit-identical artifacts across two full pipeline runs
void criterion_8(Check& check)
{
    oracle::TempDir dir("acceptance_c8");
    auto mesh_path = dir.path / "cyl.obj";
    save_obj(generate_synthetic(SyntheticKind::CylinderSector, 20), mesh_path);

    RunConfig config;
    config.inputs = {mesh_path};
    config.resolution = 50;
    config.out_dir = dir.path / "out1";
    run_pipeline(config);
    config.out_dir = dir.path / "out2";
    run_pipeline(config);

    auto strip = [](nlohmann::json j) {
        for (auto& r : j["results"]) {
            r.erase("timings_ms");
        }
        return j.dump();
    };
    check.expect(strip(nlohmann::json::parse(slurp(dir.path / "out1/report.json"))) ==
                     strip(nlohmann::json::parse(slurp(dir.path / "out2/report.json"))),
                 "reports differ beyond timing fields");

    for (const auto& entry : std::filesystem::directory_iterator(dir.path / "out1")) {
        auto name = entry.path().filename().string();
        if (name.ends_with(".ppm") || name.ends_with(".pgm") ||
            name.ends_with("_uv.obj")) {
            check.expect(slurp(entry.path()) == slurp(dir.path / "out2" / name),
                         name + " differs between runs");
        }
    }
}

// 9. metric invariants on every (mesh, algorithm) result
void criterion_9(Check& check)
{
    for (auto kind : {SyntheticKind::Plane, SyntheticKind::CylinderSector,
                      SyntheticKind::HemisphereCap, SyntheticKind::Ripple}) {
        auto mesh = generate_synthetic(kind, 10);
        std::vector<std::pair<std::string, UVMap>> results;
        results.emplace_back("ABF", abf_flatten(mesh).uv);
        results.emplace_back("LSCM", lscm_flatten(mesh));
        results.emplace_back("MM", mm_flatten(mesh));
        for (const auto& [tag, uv] : results) {
            auto m = metrics_for(mesh, uv);
            auto label = to_string(kind) + "/" + tag;
            check.expect(m.l2_mesh >= 1.0 - 1e-12, label + fmt(" l2 %.9f < 1", m.l2_mesh));
            check.expect(m.linf_mesh >= m.l2_mesh,
                         label + fmt(" linf %.9f < l2 %.9f", m.linf_mesh, m.l2_mesh));
            check.expect(m.e_mesh >= 0 && m.e_mesh < 1, label + fmt(" e %.9f", m.e_mesh));
        }
        // E(t) exact invariance under the exact scaling by 2
        auto uv = results[1].second;
        auto [e1, m1] = area_error(mesh, uv);
        auto scaled = uv;
        for (auto& p : scaled.uv) {
            p *= 2.0;
        }
        auto [e2, m2] = area_error(mesh, scaled);
        check.expect(e1 == e2 && m1 == m2,
                     to_string(kind) + ": E(t) not invariant under exact UV scaling");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    const std::string cli = argc > 1 ? argv[1] : "";

    criterion(1, "stretch metric matches the independent Jacobian+SVD oracle",
              criterion_1);
    criterion(2, "planar grid isometry identity for all three algorithms", criterion_2);
    criterion(3, "quarter-cylinder developable recovery", criterion_3);
    criterion(4, "qualitative stretch ordering and angular agreement", criterion_4);
    criterion(5, "ABF constraint satisfaction at 1e-7", criterion_5);
    criterion(6, "failure records, exit code 2, well-formed report",
              [&](Check& c) { criterion_6(c, cli); });
    criterion(7, "fold detection and raster fold mask", criterion_7);
    criterion(8, "bit-identical reports and rasters across runs", criterion_8);
    criterion(9, "metric invariants on every mesh/algorithm pair", criterion_9);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
