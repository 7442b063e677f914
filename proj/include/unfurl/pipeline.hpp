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

#include <filesystem>
#include <string>
#include <vector>

#include "unfurl/mass_spring.hpp"
#include "unfurl/report.hpp"
#include "unfurl/uv_map.hpp"

namespace unfurl
{

/** @brief Configuration of one comparison run */
struct RunConfig {
    std::vector<std::filesystem::path> inputs;
    std::vector<Algorithm> algorithms{Algorithm::ABF, Algorithm::LSCM, Algorithm::MM};
    MMConfig mm;
    std::filesystem::path out_dir;
    double resolution{50.0};  // pixels per UV unit
    /** Which per-face heatmaps to render */
    bool heatmap_angular{true};
    bool heatmap_area{true};
    bool heatmap_l2{false};
    /** When > 0, write an OBJ snapshot of the MM system every k steps */
    std::int64_t dump_trajectory_every{0};
    int report_format_version{kReportFormatVersion};

    /** @throws ConfigError when no mesh/algorithm is given or out_dir is unusable */
    void validate() const;
};

/**
 * @brief Run the full comparison pipeline
 *
 * For every mesh x algorithm: flatten, normalize scale, compute all four
 * metrics, render the flattened texture (when the mesh carries intensity
 * or texture) and the requested per-face error heatmaps, and write the UV
 * mesh. Failures are captured per pair; the report plus rendered tables is
 * written to out_dir as report.json and report.txt.
 *
 * @throws ConfigError on invalid configuration (per-pair errors never throw)
 */
ComparisonReport run_pipeline(const RunConfig& config);

/** Exit status the CLI maps a finished report to: 0 all ok, 2 otherwise */
int exit_code_for(const ComparisonReport& report);

}  // namespace unfurl
