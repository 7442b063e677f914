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
#include "unfurl/lscm.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <vector>

namespace unfurl
{

namespace
{

/** Local orthonormal 2D coordinates of one 3D triangle */
struct LocalFrame {
    // P0 = (0,0), P1 = (x1,0), P2 = (x2,y2); y2 >= 0 by frame construction
    double x1, x2, y2;
};

LocalFrame local_frame(const Vec3& q0, const Vec3& q1, const Vec3& q2)
{
    auto e1 = q1 - q0;
    auto e2 = q2 - q0;
    auto x_axis = normalized(e1);
    auto n = cross(e1, e2);
    auto y_axis = normalized(cross(normalized(n), x_axis));
    return {norm(e1), dot(e2, x_axis), dot(e2, y_axis)};
}

/**
 * Rows of the conformality residual for one face. For corner j the row pair
 * is s*(alpha_j*u_j - beta_j*v_j) and s*(beta_j*u_j + alpha_j*v_j) with
 * s = 1/(2*sqrt(A)); the summed squares equal the face's conformal energy.
 */
struct FaceRows {
    double alpha[3];
    double beta[3];
    double s;
};

FaceRows face_rows(const LocalFrame& fr)
{
    // Gradient weights of the linear hat functions in the local frame
    const double x[3] = {0, fr.x1, fr.x2};
    const double y[3] = {0, 0, fr.y2};
    FaceRows rows{};
    for (int j = 0; j < 3; j++) {
        rows.alpha[j] = y[(j + 1) % 3] - y[(j + 2) % 3];
        rows.beta[j] = x[(j + 2) % 3] - x[(j + 1) % 3];
    }
    const double area = 0.5 * fr.x1 * fr.y2;
    rows.s = 1.0 / (2.0 * std::sqrt(area));
    return rows;
}

}  // namespace

PinPair select_pins(const TriMesh3& mesh)
{
    auto loop = boundary_loop(mesh);  // throws NotADisk
    std::vector<std::uint32_t> ids(loop.begin(), loop.end());
    std::sort(ids.begin(), ids.end());

    const auto& v = mesh.vertices();
    double best = -1;
    for (std::size_t i = 0; i < ids.size(); i++) {
        for (std::size_t j = i + 1; j < ids.size(); j++) {
            best = std::max(best, norm(v[ids[j]] - v[ids[i]]));
        }
    }
    // First pair in (a,b) id order within relative tolerance of the max, so
    // exact ties (and ulp-level ties after rigid motion) pick stable ids.
    const double cutoff = best * (1.0 - 1e-9);
    for (std::size_t i = 0; i < ids.size(); i++) {
        for (std::size_t j = i + 1; j < ids.size(); j++) {
            auto d = norm(v[ids[j]] - v[ids[i]]);
            if (d >= cutoff) {
                return PinPair{ids[i], ids[j], Vec2{0, 0}, Vec2{d, 0}};
            }
        }
    }
    throw NotADisk("boundary has no vertex pair");  // unreachable on valid input
}

UVMap lscm_flatten(const TriMesh3& mesh, const PinPair& pins)
{
    using SparseMatrix = Eigen::SparseMatrix<double>;
    using Triplet = Eigen::Triplet<double>;

    const auto& faces = mesh.faces();
    const auto& verts = mesh.vertices();
    const auto n = mesh.vertex_count();

    // Free-vertex column permutation; pinned coordinates go to the RHS.
    std::vector<std::int64_t> col(n);
    std::int64_t free_count = 0;
    for (std::size_t i = 0; i < n; i++) {
        col[i] = (i == pins.a || i == pins.b) ? -1 : free_count++;
    }
    const double pin_uv[4] = {pins.pos_a.x, pins.pos_a.y, pins.pos_b.x, pins.pos_b.y};

    std::vector<Triplet> triplets;
    triplets.reserve(faces.size() * 12);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * faces.size());
    for (std::size_t f = 0; f < faces.size(); f++) {
        const auto& face = faces[f];
        auto rows = face_rows(local_frame(verts[face[0]], verts[face[1]], verts[face[2]]));
        const auto row = static_cast<std::int64_t>(2 * f);
        for (int j = 0; j < 3; j++) {
            const double a = rows.s * rows.alpha[j];
            const double c = rows.s * rows.beta[j];
            if (col[face[j]] >= 0) {
                auto cu = 2 * col[face[j]];
                triplets.emplace_back(row, cu, a);
                triplets.emplace_back(row, cu + 1, -c);
                triplets.emplace_back(row + 1, cu, c);
                triplets.emplace_back(row + 1, cu + 1, a);
            } else {
                const int base = face[j] == pins.a ? 0 : 2;
                b[row] -= a * pin_uv[base] - c * pin_uv[base + 1];
                b[row + 1] -= c * pin_uv[base] + a * pin_uv[base + 1];
            }
        }
    }

    SparseMatrix A(2 * static_cast<std::int64_t>(faces.size()), 2 * free_count);
    A.setFromTriplets(triplets.begin(), triplets.end());
    SparseMatrix AtA = SparseMatrix(A.transpose()) * A;
    Eigen::VectorXd Atb = A.transpose() * b;

    AtA.makeCompressed();
    Eigen::SimplicialLDLT<SparseMatrix> solver;
    solver.compute(AtA);
    Eigen::VectorXd x;
    if (solver.info() == Eigen::Success) {
        x = solver.solve(Atb);
    }
    if (solver.info() != Eigen::Success) {
        throw SolverFailure("LSCM: sparse factorization failed (singular system)");
    }

    // Contract: the normal-equation gradient must vanish to 1e-8 relative.
    const double rhs_scale = std::max(1.0, Atb.lpNorm<Eigen::Infinity>());
    const double residual = (AtA * x - Atb).lpNorm<Eigen::Infinity>();
    if (!(residual <= 1e-8 * rhs_scale)) {
        throw SolverFailure("LSCM: residual " + std::to_string(residual) +
                            " exceeds tolerance (rank-deficient or ill-conditioned)");
    }

    UVMap uv;
    uv.tag = Algorithm::LSCM;
    uv.uv.resize(n);
    for (std::size_t i = 0; i < n; i++) {
        if (col[i] >= 0) {
            uv.uv[i] = {x[2 * col[i]], x[2 * col[i] + 1]};
        } else {
            uv.uv[i] = i == pins.a ? pins.pos_a : pins.pos_b;
        }
    }
    if (!uv.all_finite()) {
        throw SolverFailure("LSCM: non-finite solution");
    }
    return uv;
}

UVMap lscm_flatten(const TriMesh3& mesh)
{
    return lscm_flatten(mesh, select_pins(mesh));
}

double conformal_energy(const TriMesh3& mesh, const UVMap& uv)
{
    const auto& faces = mesh.faces();
    const auto& verts = mesh.vertices();
    double energy = 0;
    for (const auto& face : faces) {
        auto rows = face_rows(local_frame(verts[face[0]], verts[face[1]], verts[face[2]]));
        double r1 = 0;
        double r2 = 0;
        for (int j = 0; j < 3; j++) {
            const auto& p = uv.uv[face[j]];
            r1 += rows.s * (rows.alpha[j] * p.x - rows.beta[j] * p.y);
            r2 += rows.s * (rows.beta[j] * p.x + rows.alpha[j] * p.y);
        }
        energy += r1 * r1 + r2 * r2;
    }
    return energy;
}

}  // namespace unfurl
