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

#include <cstdint>
#include <functional>
#include <vector>

#include "unfurl/kernels.hpp"
#include "unfurl/mesh.hpp"
#include "unfurl/uv_map.hpp"

namespace unfurl
{

/**
 * @brief Mass-spring simulation parameters
 *
 * All values are exposed because the flattening result depends on them;
 * the defaults are tuned for stability at unit-scale meshes, nothing more.
 */
struct MMConfig {
    double vertex_mass{1.0};
    double stiffness{1000.0};
    double damping{5.0};
    double gravity{10.0};
    double timestep{1e-3};
    /** Termination: total kinetic energy <= ke_threshold * vertex count */
    double ke_threshold{1e-8};
    std::int64_t max_steps{500000};
    double collision_restitution{0.0};

    /**
     * @throws ConfigError if any value is non-positive (restitution may be
     * zero), restitution is outside [0,1], or the timestep violates the
     * stability bound dt < 2*sqrt(mass/stiffness)
     */
    void validate() const;
};

/**
 * @brief Point masses joined by edge springs settling onto the z=0 plane
 */
struct SpringSystem {
    std::vector<Vec3> positions;
    std::vector<Vec3> velocities;
    std::vector<kernels::Spring> springs;
    kernels::SpringAdjacency adjacency;
    MMConfig config;
    std::int64_t step_count{0};

    bool converged{false};
    /** max |z| over vertices after the last step */
    double plane_residual{0};
};

/**
 * @brief Build the spring system for a mesh
 *
 * One mass per vertex, one spring per unique mesh edge with rest length
 * equal to the 3D edge length. Initial positions are the mesh vertices
 * rigidly rotated so the best-fit plane (smallest principal axis of the
 * vertex covariance) is parallel to z=0, translated so the lowest point
 * touches z=0. Velocities start at zero.
 *
 * @throws ConfigError on invalid config
 */
SpringSystem build_spring_system(const TriMesh3& mesh, const MMConfig& config = {});

/**
 * @brief Advance one semi-implicit Euler step with plane collision
 * @throws Diverged if any position or velocity becomes non-finite
 */
void step(SpringSystem& system,
          kernels::Backend backend = kernels::default_backend());

/** @brief Progress report from simulate() */
struct SimulateStatus {
    bool converged{false};
    std::int64_t steps{0};
    double kinetic_energy{0};
    double plane_residual{0};
};

/**
 * @brief Step until the kinetic energy falls below the threshold or
 * max_steps is reached
 *
 * Non-convergence is reported in the returned status (and the system's
 * converged flag), not thrown. on_snapshot, when set, is called every
 * snapshot_every steps and once at the end.
 *
 * @throws Diverged (propagated from step)
 */
SimulateStatus simulate(SpringSystem& system,
                        kernels::Backend backend = kernels::default_backend(),
                        const std::function<void(const SpringSystem&)>& on_snapshot = {},
                        std::int64_t snapshot_every = 0);

/**
 * @brief Read UV coordinates off the settled positions
 *
 * UV = (x,y) of the final state; the residual max |z| is recorded on the
 * system as a quality diagnostic.
 */
UVMap project_to_plane(const SpringSystem& system);

/** @brief build_spring_system / simulate / project_to_plane, end to end */
UVMap mm_flatten(const TriMesh3& mesh, const MMConfig& config = {},
                 kernels::Backend backend = kernels::default_backend(),
                 SimulateStatus* status_out = nullptr);

}  // namespace unfurl
