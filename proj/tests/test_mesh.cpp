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
#include <doctest.h>

#include "test_helpers.hpp"
#include "unfurl/mesh.hpp"
#include "unfurl/synthetic.hpp"

using namespace unfurl;

TEST_CASE("construction rejects structural defects")
{
    CHECK_THROWS_AS(TriMesh3({{0, 0, 0}, {1, 0, 0}}, {{0, 1, 2}}), InvalidMesh);
    CHECK_THROWS_AS(TriMesh3({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 1}}), InvalidMesh);
}

TEST_CASE("validate: planar grid is a disk")
{
    auto mesh = generate_synthetic(SyntheticKind::Plane, 10);
    CHECK(mesh.vertex_count() == 100);
    CHECK(mesh.face_count() == 162);
    auto report = validate(mesh);
    CHECK(report.is_disk);
    CHECK(report.boundary_loop_count == 1);
    CHECK(report.degenerate_face_ids.empty());
    CHECK(report.non_manifold_edges.empty());
}

TEST_CASE("validate: bowtie is not a disk")
{
    auto report = validate(oracle::bowtie());
    CHECK_FALSE(report.is_disk);
    // the shared vertex splits the boundary into two loops
    CHECK(report.boundary_loop_count == 2);
}

TEST_CASE("validate: closed tetrahedron has no boundary")
{
    auto report = validate(oracle::tetrahedron());
    CHECK(report.boundary_loop_count == 0);
    CHECK_FALSE(report.is_disk);
}

TEST_CASE("validate: three faces on one edge are non-manifold")
{
    TriMesh3 mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}},
                  {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}});
    auto report = validate(mesh);
    CHECK_FALSE(report.non_manifold_edges.empty());
    CHECK_FALSE(report.is_disk);
}

TEST_CASE("validate: inconsistent winding is flagged")
{
    // both faces traverse the shared edge 0->1 in the same direction
    TriMesh3 mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, -1, 0}},
                  {{0, 1, 2}, {0, 1, 3}});
    auto report = validate(mesh);
    CHECK_FALSE(report.non_manifold_edges.empty());
}

TEST_CASE("validate reports is_disk consistently with its own fields")
{
    for (const auto& mesh :
         {oracle::bowtie(), oracle::tetrahedron(), oracle::unit_square(),
          generate_synthetic(SyntheticKind::HemisphereCap, 6)}) {
        auto r = validate(mesh);
        CHECK(r.is_disk == (r.boundary_loop_count == 1 && r.non_manifold_edges.empty()));
    }
}

TEST_CASE("boundary_loop: single triangle")
{
    auto loop = boundary_loop(oracle::single_triangle());
    REQUIRE(loop.size() == 3);
    CHECK(loop[0] == 0);  // lowest id first
    CHECK(((loop[1] == 1 && loop[2] == 2) || (loop[1] == 2 && loop[2] == 1)));
}

TEST_CASE("boundary_loop: grid perimeter")
{
    auto mesh = generate_synthetic(SyntheticKind::Plane, 10);
    auto loop = boundary_loop(mesh);
    CHECK(loop.size() == 36);
    CHECK(loop[0] == 0);
    // deterministic across calls
    CHECK(boundary_loop(mesh) == loop);
    // interior to the left: walking from vertex 0, the next boundary vertex
    // along +x keeps the grid above the walk
    CHECK(loop[1] == 1);
}

TEST_CASE("boundary_loop: tetrahedron throws")
{
    CHECK_THROWS_AS(boundary_loop(oracle::tetrahedron()), NotADisk);
}

TEST_CASE("corner angles: equilateral and right isoceles")
{
    auto eq = oracle::single_triangle({0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3) / 2, 0});
    auto angles = corner_angles_3d(eq);
    for (int j = 0; j < 3; j++) {
        CHECK(angles[j] == doctest::Approx(kPi / 3).epsilon(1e-12));
    }

    auto iso = oracle::single_triangle({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
    angles = corner_angles_3d(iso);
    CHECK(angles[0] == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(angles[1] == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(angles[2] == doctest::Approx(kPi / 4).epsilon(1e-12));
}

TEST_CASE("corner angles match the law-of-cosines oracle")
{
    for (int trial = 0; trial < 100; trial++) {
        auto t = oracle::random_triangle_pair();
        auto mesh = oracle::single_triangle(t.q1, t.q2, t.q3);
        auto angles = corner_angles_3d(mesh);
        auto expect = oracle::law_of_cosines(t.q1, t.q2, t.q3);
        for (int j = 0; j < 3; j++) {
            CHECK(angles[j] == doctest::Approx(expect[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("corner angles of every face sum to pi")
{
    for (auto kind : {SyntheticKind::CylinderSector, SyntheticKind::HemisphereCap,
                      SyntheticKind::Ripple}) {
        auto mesh = generate_synthetic(kind, 12);
        auto angles = corner_angles_3d(mesh);
        for (std::size_t f = 0; f < mesh.face_count(); f++) {
            auto sum = angles[3 * f] + angles[3 * f + 1] + angles[3 * f + 2];
            CHECK(std::abs(sum - kPi) <= 1e-9);
        }
    }
}

TEST_CASE("face areas: unit right triangle and unit-square grid")
{
    CHECK(face_area_3d(oracle::single_triangle(), 0) == doctest::Approx(0.5));
    // 10x10 cells of unit squares = 11x11 vertices
    auto grid = generate_synthetic(SyntheticKind::Plane, 11);
    CHECK(total_area_3d(grid) == 100.0);
}

TEST_CASE("face area matches Heron oracle")
{
    for (int trial = 0; trial < 100; trial++) {
        auto t = oracle::random_triangle_pair();
        auto mesh = oracle::single_triangle(t.q1, t.q2, t.q3);
        CHECK(face_area_3d(mesh, 0) ==
              doctest::Approx(oracle::heron_area(t.q1, t.q2, t.q3)).epsilon(1e-12));
    }
}

TEST_CASE("total area equals the face-order sum exactly")
{
    auto mesh = generate_synthetic(SyntheticKind::Ripple, 9);
    double sum = 0;
    for (std::uint32_t f = 0; f < mesh.face_count(); f++) {
        sum += face_area_3d(mesh, f);
    }
    CHECK(total_area_3d(mesh) == sum);
}

TEST_CASE("wheel ordering covers every incident face once")
{
    auto mesh = generate_synthetic(SyntheticKind::Plane, 4);
    auto conn = MeshConnectivity::build(mesh);
    // vertex 5 is interior in a 4x4 grid
    REQUIRE_FALSE(conn.vertex_on_boundary(5));
    auto wheel = conn.wheel(5);
    CHECK(wheel.size() == 6);
    for (auto he : wheel) {
        CHECK(conn.origin(he, mesh) == 5);
    }
}
