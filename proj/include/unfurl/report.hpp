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
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unfurl/metrics.hpp"
#include "unfurl/uv_map.hpp"

namespace unfurl
{

constexpr int kReportFormatVersion = 1;
constexpr const char* kToolkitVersion = "unfurl 0.1.0";

/** @brief Structured failure record for one (mesh, algorithm) pair */
struct FailureRecord {
    std::string error_type;  // e.g. "SolverFailure"
    std::string stage;       // load | flatten | metrics | raster
    std::string message;
};

/** @brief Per-pair timing breakdown, milliseconds */
struct StageTimings {
    double flatten_ms{0};
    double metrics_ms{0};
    double raster_ms{0};
};

/** @brief Non-metric observations worth reporting per pair */
struct RunDiagnostics {
    std::optional<int> abf_iterations;
    std::optional<double> abf_constraint_residual;
    std::optional<std::size_t> abf_placement_warnings;
    std::optional<bool> mm_converged;
    std::optional<double> mm_plane_residual;
    std::optional<std::int64_t> mm_steps;
    std::size_t fold_count{0};
    std::size_t fold_pixel_count{0};
};

/** @brief Result of one (mesh, algorithm) pipeline cell */
struct PairResult {
    std::string mesh_name;
    Algorithm algorithm{Algorithm::LSCM};
    bool ok{false};
    std::optional<MetricsReport> metrics;
    std::optional<FailureRecord> failure;
    RunDiagnostics diagnostics;
    StageTimings timings;
    std::map<std::string, std::string> artifacts;  // label -> written file name
};

/**
 * @brief Whole-run comparison report
 *
 * Every requested (mesh, algorithm) pair appears exactly once, as success
 * or failure.
 */
struct ComparisonReport {
    std::vector<std::string> mesh_names;
    std::vector<Algorithm> algorithms;
    std::vector<PairResult> results;

    const PairResult* find(const std::string& mesh, Algorithm a) const;
    bool all_ok() const;
};

/**
 * @brief Serialize as versioned JSON
 *
 * Field order and float formatting are fixed, so two identical runs give
 * byte-identical output except for the timing fields.
 */
std::string report_to_json(const ComparisonReport& report);

/**
 * @brief Render the four per-mesh metric tables (L2, Linf, F(M), E(M)) as
 * plain text; failed cells print "---"
 */
std::string report_to_text(const ComparisonReport& report);

}  // namespace unfurl
