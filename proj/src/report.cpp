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
#include "unfurl/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace unfurl
{

using json = nlohmann::ordered_json;

const PairResult* ComparisonReport::find(const std::string& mesh, Algorithm a) const
{
    for (const auto& r : results) {
        if (r.mesh_name == mesh && r.algorithm == a) {
            return &r;
        }
    }
    return nullptr;
}

bool ComparisonReport::all_ok() const
{
    for (const auto& r : results) {
        if (!r.ok) {
            return false;
        }
    }
    return true;
}

namespace
{

json metrics_json(const MetricsReport& m)
{
    json j;
    j["l2_mesh"] = m.l2_mesh;
    j["linf_mesh"] = m.linf_mesh;
    j["f_alpha"] = m.f_alpha;
    j["f_mesh"] = m.f_mesh;
    j["e_mesh"] = m.e_mesh;
    j["scale_factor"] = m.scale_factor;
    j["flipped_face_ids"] = m.flipped_face_ids;
    return j;
}

json diagnostics_json(const RunDiagnostics& d)
{
    json j = json::object();
    if (d.abf_iterations) {
        j["abf_iterations"] = *d.abf_iterations;
    }
    if (d.abf_constraint_residual) {
        j["abf_constraint_residual"] = *d.abf_constraint_residual;
    }
    if (d.abf_placement_warnings) {
        j["abf_placement_warnings"] = *d.abf_placement_warnings;
    }
    if (d.mm_converged) {
        j["mm_converged"] = *d.mm_converged;
    }
    if (d.mm_plane_residual) {
        j["mm_plane_residual"] = *d.mm_plane_residual;
    }
    if (d.mm_steps) {
        j["mm_steps"] = *d.mm_steps;
    }
    j["fold_count"] = d.fold_count;
    j["fold_pixel_count"] = d.fold_pixel_count;
    return j;
}

}  // namespace

std::string report_to_json(const ComparisonReport& report)
{
    json j;
    j["format_version"] = kReportFormatVersion;
    j["toolkit"] = kToolkitVersion;
    j["meshes"] = report.mesh_names;
    json algos = json::array();
    for (auto a : report.algorithms) {
        algos.push_back(to_string(a));
    }
    j["algorithms"] = algos;

    json results = json::array();
    for (const auto& r : report.results) {
        json e;
        e["mesh"] = r.mesh_name;
        e["algorithm"] = to_string(r.algorithm);
        e["status"] = r.ok ? "ok" : "failed";
        if (r.metrics) {
            e["metrics"] = metrics_json(*r.metrics);
        }
        if (r.failure) {
            e["error"] = {{"type", r.failure->error_type},
                          {"stage", r.failure->stage},
                          {"message", r.failure->message}};
        }
        e["diagnostics"] = diagnostics_json(r.diagnostics);
        e["artifacts"] = r.artifacts;
        e["timings_ms"] = {{"flatten", r.timings.flatten_ms},
                           {"metrics", r.timings.metrics_ms},
                           {"raster", r.timings.raster_ms}};
        results.push_back(e);
    }
    j["results"] = results;
    return j.dump(2) + "\n";
}

std::string report_to_text(const ComparisonReport& report)
{
    std::ostringstream out;
    struct Table {
        const char* title;
        double MetricsReport::* field;
    };
    const Table tables[] = {
        {"L2 Error", &MetricsReport::l2_mesh},
        {"Linf Error", &MetricsReport::linf_mesh},
        {"F(M) Error", &MetricsReport::f_mesh},
        {"E(M) Error", &MetricsReport::e_mesh},
    };

    std::size_t name_width = 4;
    for (const auto& m : report.mesh_names) {
        name_width = std::max(name_width, m.size());
    }

    char buf[64];
    for (const auto& table : tables) {
        out << table.title << "\n";
        out << std::string(name_width, ' ') << "  ";
        for (auto a : report.algorithms) {
            std::snprintf(buf, sizeof(buf), "%12s", to_string(a).c_str());
            out << buf;
        }
        out << "\n";
        out << std::string(name_width + 2 + 12 * report.algorithms.size(), '-') << "\n";
        for (const auto& mesh : report.mesh_names) {
            out << mesh << std::string(name_width - mesh.size(), ' ') << "  ";
            for (auto a : report.algorithms) {
                const auto* r = report.find(mesh, a);
                if (r && r->ok && r->metrics) {
                    std::snprintf(buf, sizeof(buf), "%12.5f", (*r->metrics).*table.field);
                } else {
                    std::snprintf(buf, sizeof(buf), "%12s", "---");
                }
                out << buf;
            }
            out << "\n";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace unfurl
