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
#include "unfurl/abf.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <deque>
#include <vector>

#include "unfurl/kernels.hpp"

namespace unfurl
{

namespace
{

double clamp_angle(double a)
{
    return std::clamp(a, kAngleClamp, kPi - kAngleClamp);
}

/** One face around an interior vertex: corner at the vertex, then the
 * corners at the next/previous vertices of that face. */
struct WheelCorner {
    std::int64_t at;
    std::int64_t next;
    std::int64_t prev;
};

struct InteriorVertex {
    std::uint32_t vertex;
    std::vector<WheelCorner> wheel;
};

std::vector<InteriorVertex> interior_vertices(const TriMesh3& mesh,
                                              const MeshConnectivity& conn)
{
    std::vector<InteriorVertex> out;
    for (std::uint32_t v = 0; v < mesh.vertex_count(); v++) {
        if (conn.vertex_on_boundary(v)) {
            continue;
        }
        InteriorVertex iv;
        iv.vertex = v;
        for (auto he : conn.wheel(v)) {
            auto f = he / 3;
            auto j = he % 3;
            iv.wheel.push_back({3 * f + j, 3 * f + (j + 1) % 3, 3 * f + (j + 2) % 3});
        }
        out.push_back(std::move(iv));
    }
    return out;
}

/** Sine-product constraint and its partial derivatives for one wheel */
struct LenConstraint {
    double value;
    // per wheel face: d/d(alpha_next) and d/d(alpha_prev)
    std::vector<double> d_next;
    std::vector<double> d_prev;
};

LenConstraint len_constraint(const InteriorVertex& iv, const std::vector<double>& alpha)
{
    const auto m = iv.wheel.size();
    std::vector<double> sn(m), sp(m), cn(m), cp(m);
    for (std::size_t k = 0; k < m; k++) {
        sn[k] = std::sin(alpha[iv.wheel[k].next]);
        cn[k] = std::cos(alpha[iv.wheel[k].next]);
        sp[k] = std::sin(alpha[iv.wheel[k].prev]);
        cp[k] = std::cos(alpha[iv.wheel[k].prev]);
    }
    // prefix/suffix products give each exclusion product without division
    auto exclusion = [&](const std::vector<double>& s) {
        std::vector<double> pre(m + 1, 1.0), suf(m + 1, 1.0), ex(m);
        for (std::size_t k = 0; k < m; k++) {
            pre[k + 1] = pre[k] * s[k];
        }
        for (std::size_t k = m; k-- > 0;) {
            suf[k] = suf[k + 1] * s[k];
        }
        for (std::size_t k = 0; k < m; k++) {
            ex[k] = pre[k] * suf[k + 1];
        }
        return ex;
    };
    auto exn = exclusion(sn);
    auto exp_ = exclusion(sp);

    LenConstraint lc;
    double p1 = 1, p2 = 1;
    for (std::size_t k = 0; k < m; k++) {
        p1 *= sn[k];
        p2 *= sp[k];
    }
    lc.value = p1 - p2;
    lc.d_next.resize(m);
    lc.d_prev.resize(m);
    for (std::size_t k = 0; k < m; k++) {
        lc.d_next[k] = cn[k] * exn[k];
        lc.d_prev[k] = -cp[k] * exp_[k];
    }
    return lc;
}

struct Residuals {
    Eigen::VectorXd grad;        // stationarity, per corner
    Eigen::VectorXd constraints; // tri rows, then plan rows, then len rows
    std::vector<LenConstraint> len;
    double grad_inf;
    double constraint_inf;
};

Residuals evaluate(const TriMesh3& mesh, const std::vector<InteriorVertex>& interior,
                   const std::vector<double>& alpha, const std::vector<double>& phi,
                   const std::vector<double>& weight, const Eigen::VectorXd& lambda_tri,
                   const Eigen::VectorXd& lambda_plan, const Eigen::VectorXd& lambda_len)
{
    const auto nf = static_cast<std::int64_t>(mesh.face_count());
    const auto ni = static_cast<std::int64_t>(interior.size());

    Residuals r;
    r.grad.resize(3 * nf);
    for (std::int64_t f = 0; f < nf; f++) {
        for (int j = 0; j < 3; j++) {
            auto c = 3 * f + j;
            r.grad[c] = 2.0 * weight[c] * (alpha[c] - phi[c]) + lambda_tri[f];
        }
    }
    r.constraints.resize(nf + 2 * ni);
    for (std::int64_t f = 0; f < nf; f++) {
        r.constraints[f] = alpha[3 * f] + alpha[3 * f + 1] + alpha[3 * f + 2] - kPi;
    }
    r.len.reserve(interior.size());
    for (std::int64_t i = 0; i < ni; i++) {
        const auto& iv = interior[i];
        double plan = -2.0 * kPi;
        for (const auto& wc : iv.wheel) {
            plan += alpha[wc.at];
            r.grad[wc.at] += lambda_plan[i];
        }
        r.constraints[nf + i] = plan;

        auto lc = len_constraint(iv, alpha);
        r.constraints[nf + ni + i] = lc.value;
        for (std::size_t k = 0; k < iv.wheel.size(); k++) {
            r.grad[iv.wheel[k].next] += lambda_len[i] * lc.d_next[k];
            r.grad[iv.wheel[k].prev] += lambda_len[i] * lc.d_prev[k];
        }
        r.len.push_back(std::move(lc));
    }
    r.grad_inf = r.grad.size() > 0 ? r.grad.lpNorm<Eigen::Infinity>() : 0.0;
    r.constraint_inf =
        r.constraints.size() > 0 ? r.constraints.lpNorm<Eigen::Infinity>() : 0.0;
    return r;
}

}  // namespace

std::vector<double> optimal_angles(const std::vector<double>& beta, const TriMesh3& mesh)
{
    auto conn = MeshConnectivity::build(mesh);
    std::vector<double> phi(beta);
    for (auto& p : phi) {
        p = clamp_angle(p);
    }
    for (const auto& iv : interior_vertices(mesh, conn)) {
        double sum = 0;
        for (const auto& wc : iv.wheel) {
            sum += beta[wc.at];
        }
        const double scale = 2.0 * kPi / sum;
        for (const auto& wc : iv.wheel) {
            phi[wc.at] = clamp_angle(beta[wc.at] * scale);
        }
    }
    return phi;
}

AbfSolution abf_solve(const TriMesh3& mesh, const std::vector<double>& phi,
                      const std::vector<double>& weight, const AbfOptions& opts)
{
    using SparseMatrix = Eigen::SparseMatrix<double>;
    using Triplet = Eigen::Triplet<double>;

    if (opts.tol <= 0) {
        throw ConfigError("abf_solve: tol must be positive");
    }
    auto conn = MeshConnectivity::build(mesh);
    auto interior = interior_vertices(mesh, conn);
    const auto nf = static_cast<std::int64_t>(mesh.face_count());
    const auto ni = static_cast<std::int64_t>(interior.size());
    const auto n_alpha = 3 * nf;
    const auto n_total = n_alpha + nf + 2 * ni;

    AbfSolution sol;
    sol.angles.beta.resize(n_alpha);
    kernels::corner_angles(mesh.vertices(), mesh.faces(), sol.angles.beta,
                           kernels::default_backend());
    sol.angles.phi = phi;
    sol.angles.weight = weight;
    std::vector<double>& alpha = sol.angles.alpha;
    alpha = phi;

    Eigen::VectorXd lambda_tri = Eigen::VectorXd::Zero(nf);
    Eigen::VectorXd lambda_plan = Eigen::VectorXd::Zero(ni);
    Eigen::VectorXd lambda_len = Eigen::VectorXd::Zero(ni);

    auto res = evaluate(mesh, interior, alpha, phi, weight, lambda_tri, lambda_plan,
                        lambda_len);
    for (sol.iterations = 0; sol.iterations < opts.max_iter; sol.iterations++) {
        if (!std::isfinite(res.grad_inf) || !std::isfinite(res.constraint_inf)) {
            throw SolverFailure("ABF: non-finite residual at iteration " +
                                std::to_string(sol.iterations));
        }
        if (res.constraint_inf <= opts.tol && res.grad_inf <= opts.tol) {
            sol.converged = true;
            break;
        }

        // KKT system: [diag(2w) J^T; J 0] [da; dl] = [-grad; -C]
        std::vector<Triplet> triplets;
        triplets.reserve(n_alpha + 12 * nf);
        for (std::int64_t c = 0; c < n_alpha; c++) {
            triplets.emplace_back(c, c, 2.0 * weight[c]);
        }
        auto add_sym = [&](std::int64_t row, std::int64_t col, double v) {
            triplets.emplace_back(row, col, v);
            triplets.emplace_back(col, row, v);
        };
        for (std::int64_t f = 0; f < nf; f++) {
            for (int j = 0; j < 3; j++) {
                add_sym(n_alpha + f, 3 * f + j, 1.0);
            }
        }
        for (std::int64_t i = 0; i < ni; i++) {
            const auto& iv = interior[i];
            const auto plan_row = n_alpha + nf + i;
            const auto len_row = n_alpha + nf + ni + i;
            for (std::size_t k = 0; k < iv.wheel.size(); k++) {
                add_sym(plan_row, iv.wheel[k].at, 1.0);
                add_sym(len_row, iv.wheel[k].next, res.len[i].d_next[k]);
                add_sym(len_row, iv.wheel[k].prev, res.len[i].d_prev[k]);
            }
        }
        SparseMatrix kkt(n_total, n_total);
        kkt.setFromTriplets(triplets.begin(), triplets.end());
        kkt.makeCompressed();

        Eigen::VectorXd rhs(n_total);
        rhs.head(n_alpha) = -res.grad;
        rhs.tail(nf + 2 * ni) = -res.constraints;

        Eigen::SparseLU<SparseMatrix> solver;
        solver.compute(kkt);
        if (solver.info() != Eigen::Success) {
            throw SolverFailure("ABF: KKT factorization failed");
        }
        Eigen::VectorXd delta = solver.solve(rhs);
        if (solver.info() != Eigen::Success) {
            throw SolverFailure("ABF: KKT solve failed");
        }

        // Damped step: halve until the residual stops increasing.
        const double res_before = std::max(res.grad_inf, res.constraint_inf);
        const std::vector<double> alpha0 = alpha;
        const Eigen::VectorXd lt0 = lambda_tri, lp0 = lambda_plan, ll0 = lambda_len;
        double step = 1.0;
        while (true) {
            for (std::int64_t c = 0; c < n_alpha; c++) {
                alpha[c] = clamp_angle(alpha0[c] + step * delta[c]);
            }
            lambda_tri = lt0 + step * delta.segment(n_alpha, nf);
            lambda_plan = lp0 + step * delta.segment(n_alpha + nf, ni);
            lambda_len = ll0 + step * delta.segment(n_alpha + nf + ni, ni);
            res = evaluate(mesh, interior, alpha, phi, weight, lambda_tri, lambda_plan,
                           lambda_len);
            const double res_after = std::max(res.grad_inf, res.constraint_inf);
            if (res_after <= res_before || step <= 1.0 / 64.0) {
                break;
            }
            step *= 0.5;
        }
    }

    sol.constraint_residual_inf = res.constraint_inf;
    sol.gradient_inf = res.grad_inf;
    if (!sol.converged &&
        (res.constraint_inf <= opts.tol && res.grad_inf <= opts.tol)) {
        sol.converged = true;  // converged exactly on the last iteration
    }
    return sol;
}

AbfUvResult reconstruct_uv(const TriMesh3& mesh, const AngleSet& angles,
                           std::array<std::uint32_t, 2> scale_edge)
{
    auto conn = MeshConnectivity::build(mesh);
    const auto& faces = mesh.faces();
    const auto& alpha = angles.alpha;

    // Locate the directed half-edge for the scale edge.
    std::int32_t seed = -1;
    for (std::int32_t he = 0; he < static_cast<std::int32_t>(3 * faces.size()); he++) {
        if (conn.origin(he, mesh) == scale_edge[0] && conn.target(he, mesh) == scale_edge[1]) {
            seed = he;
            break;
        }
    }
    if (seed < 0) {
        for (std::int32_t he = 0; he < static_cast<std::int32_t>(3 * faces.size()); he++) {
            if (conn.origin(he, mesh) == scale_edge[1] &&
                conn.target(he, mesh) == scale_edge[0]) {
                seed = he;
                break;
            }
        }
    }
    if (seed < 0) {
        throw NotADisk("scale edge is not an edge of the mesh");
    }

    const double edge_len =
        norm(mesh.vertices()[conn.target(seed, mesh)] - mesh.vertices()[conn.origin(seed, mesh)]);

    AbfUvResult result;
    result.uv.tag = Algorithm::ABF;
    result.uv.uv.assign(mesh.vertex_count(), Vec2{0, 0});
    std::vector<bool> placed(mesh.vertex_count(), false);
    std::vector<bool> face_done(faces.size(), false);

    auto place_seed = [&](std::int32_t he) {
        result.uv.uv[conn.origin(he, mesh)] = Vec2{0, 0};
        result.uv.uv[conn.target(he, mesh)] = Vec2{edge_len, 0};
        placed[conn.origin(he, mesh)] = true;
        placed[conn.target(he, mesh)] = true;
    };
    place_seed(seed);

    // Breadth-first over faces; each face is entered across a half-edge
    // whose endpoints are already placed, and places its third vertex by
    // the law of sines in its own solved angles.
    std::deque<std::int32_t> queue{seed};
    while (!queue.empty()) {
        auto he = queue.front();
        queue.pop_front();
        auto f = he / 3;
        if (face_done[f]) {
            continue;
        }
        face_done[f] = true;

        const int j = he % 3;
        const auto vi = faces[f][j];
        const auto vj = faces[f][(j + 1) % 3];
        const auto vk = faces[f][(j + 2) % 3];
        const double a_i = alpha[3 * f + j];
        const double a_j = alpha[3 * f + (j + 1) % 3];
        const double a_k = alpha[3 * f + (j + 2) % 3];

        const auto pi_ = result.uv.uv[vi];
        const auto pj = result.uv.uv[vj];
        const auto base = pj - pi_;
        const double base_len = norm(base);
        const double lik = base_len * std::sin(a_j) / std::sin(a_k);
        const auto candidate = pi_ + lik * rotated(normalized(base), a_i);

        if (!placed[vk]) {
            result.uv.uv[vk] = candidate;
            placed[vk] = true;
        } else {
            const double deviation = norm(candidate - result.uv.uv[vk]);
            if (deviation > 1e-3 * edge_len) {
                result.inconsistent_angles.push_back({vk, static_cast<std::uint32_t>(f), deviation});
            }
        }
        for (int e = 0; e < 3; e++) {
            auto t = conn.twin[3 * f + e];
            if (t >= 0 && !face_done[t / 3]) {
                queue.push_back(t);
            }
        }
    }
    return result;
}

AbfUvResult abf_flatten(const TriMesh3& mesh, const AbfOptions& opts,
                        AbfSolution* solution_out)
{
    auto loop = boundary_loop(mesh);  // throws NotADisk

    std::vector<double> beta(mesh.face_count() * 3);
    kernels::corner_angles(mesh.vertices(), mesh.faces(), beta,
                           kernels::default_backend());
    auto phi = optimal_angles(beta, mesh);
    std::vector<double> weight(phi.size());
    for (std::size_t c = 0; c < phi.size(); c++) {
        weight[c] = 1.0 / (phi[c] * phi[c]);
    }

    auto sol = abf_solve(mesh, phi, weight, opts);
    sol.angles.beta = beta;
    if (solution_out) {
        *solution_out = sol;
    }
    if (!sol.converged) {
        throw SolverFailure("ABF: no convergence after " +
                            std::to_string(sol.iterations) +
                            " iterations (constraint residual " +
                            std::to_string(sol.constraint_residual_inf) + ")");
    }

    auto result = reconstruct_uv(mesh, sol.angles, {loop[0], loop[1]});
    if (!result.uv.all_finite()) {
        throw SolverFailure("ABF: reconstruction produced non-finite coordinates");
    }
    return result;
}

}  // namespace unfurl
