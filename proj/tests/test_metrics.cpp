#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hlo/closest_point.hpp"
#include "hlo/errors.hpp"
#include "hlo/half_kernel.hpp"
#include "hlo/metrics.hpp"
#include "hlo/shapes.hpp"
#include "test_support.hpp"

using namespace hlo;
using test_support::square_two_triangles;

TEST_CASE("add_noise: zero sigma is the identity") {
    TriMesh m = shapes::icosphere(1);
    TriMesh out = add_noise(m, NoiseSpec{0.0, 42});
    CHECK(out.positions == m.positions);
}

TEST_CASE("add_noise: fixed seed is bit-deterministic") {
    TriMesh m = shapes::icosphere(2);
    NoiseSpec spec{0.4, 1234};
    TriMesh a = add_noise(m, spec);
    TriMesh b = add_noise(m, spec);
    CHECK(a.positions == b.positions);
    TriMesh c = add_noise(m, NoiseSpec{0.4, 1235});
    CHECK(a.positions != c.positions);
}

TEST_CASE("add_noise: sample std matches sigma within 5%") {
    TriMesh m = shapes::icosphere(3);
    const double sigma = 0.5 * mean_edge_length(m);
    double sum_sq = 0.0;
    long count = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        TriMesh noisy = add_noise(m, NoiseSpec{0.5, seed});
        for (int v = 0; v < m.vertex_count(); ++v) {
            const Vec3 d = noisy.positions[v] - m.positions[v];
            sum_sq += d.x * d.x + d.y * d.y + d.z * d.z;
            count += 3;
        }
    }
    const double sample_std = std::sqrt(sum_sq / static_cast<double>(count));
    CHECK(std::abs(sample_std - sigma) < 0.05 * sigma);
}

TEST_CASE("add_noise: along-normal mode displaces along vertex normals") {
    TriMesh m = shapes::icosphere(2);
    TriMesh noisy = add_noise(m, NoiseSpec{0.3, 7, NoiseDirection::along_normal});
    const auto normals = vertex_normals_area_weighted(m);
    for (int v = 0; v < m.vertex_count(); ++v) {
        const Vec3 d = noisy.positions[v] - m.positions[v];
        CHECK(norm(cross(d, normals[v])) < 1e-9 * (norm(d) + 1.0));
    }
}

TEST_CASE("closest_point_on_triangle: face, edge and vertex regions") {
    const Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
    // Above the centroid: closest point is the centroid, distance h.
    const Vec3 centroid = (a + b + c) / 3.0;
    const double h = 0.37;
    CHECK(norm(closest_point_on_triangle(centroid + Vec3{0, 0, h}, a, b, c) - centroid) < 1e-15);
    // Beyond vertex b.
    CHECK(norm(closest_point_on_triangle({2, -1, 0}, a, b, c) - b) < 1e-15);
    // Off the hypotenuse: projects onto the edge bc.
    const Vec3 q{1, 1, 0};
    const Vec3 cp = closest_point_on_triangle(q, a, b, c);
    CHECK(norm(cp - Vec3{0.5, 0.5, 0}) < 1e-15);
}

TEST_CASE("TriangleBvh agrees with brute force") {
    TriMesh m = add_noise(shapes::icosphere(2), NoiseSpec{0.3, 19});
    TriangleBvh bvh(m);
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    for (int trial = 0; trial < 500; ++trial) {
        const Vec3 q{coord(gen), coord(gen), coord(gen)};
        double best = std::numeric_limits<double>::max();
        for (const auto& [ia, ib, ic] : m.faces) {
            const Vec3 cp =
                closest_point_on_triangle(q, m.positions[ia], m.positions[ib], m.positions[ic]);
            best = std::min(best, norm(q - cp));
        }
        CHECK(test_support::rel_diff(bvh.closest(q).distance, best) < 1e-12);
    }
}

TEST_CASE("e_v: zero on identical meshes, linear under joint scaling") {
    TriMesh m = shapes::icosphere(2);
    CHECK(e_v(m, m) == 0.0);

    TriMesh noisy = add_noise(m, NoiseSpec{0.2, 3});
    const double base = e_v(noisy, m);
    CHECK(base > 0.0);

    auto scaled = [](const TriMesh& mesh, double s) {
        std::vector<Vec3> pos;
        for (const auto& p : mesh.positions) pos.push_back(p * s);
        return with_positions(mesh, std::move(pos));
    };
    CHECK(test_support::rel_diff(e_v(scaled(noisy, 2.0), scaled(m, 2.0)), 2.0 * base) < 1e-9);
    // Scaling only the reference changes the (dimensional) metric.
    CHECK(e_v(noisy, scaled(m, 2.0)) != doctest::Approx(base).epsilon(1e-6));
}

TEST_CASE("msae: identity, quarter turn, single flip") {
    TriMesh m = square_two_triangles();
    CHECK(msae(m, m).value == 0.0);

    // Rotate the whole mesh a quarter turn about x: every normal moves 90 deg.
    TriMesh rotated = test_support::rigidly_moved(m, {1, 0, 0}, std::numbers::pi / 2, {0, 0, 0});
    const double quarter = std::numbers::pi / 2;
    CHECK(msae(rotated, m).value == doctest::Approx(quarter * quarter).epsilon(1e-12));

    // Flip one of the two faces: (pi^2 + 0) / 2.
    std::vector<std::array<int, 3>> flipped_faces_list = m.faces;
    std::swap(flipped_faces_list[0][1], flipped_faces_list[0][2]);
    TriMesh flipped = build_mesh(m.positions, flipped_faces_list);
    CHECK(std::abs(msae(flipped, m).value - std::numbers::pi * std::numbers::pi / 2.0) <= 1e-12);

    TriMesh tri = build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{{0, 1, 2}}});
    CHECK_THROWS_AS(msae(m, tri), FaceCountMismatch);
}

TEST_CASE("msae and e_v: joint rigid motion leaves the metrics unchanged") {
    TriMesh a = add_noise(shapes::icosphere(2), NoiseSpec{0.2, 5});
    TriMesh b = shapes::icosphere(2);
    const double base_msae = msae(a, b).value;
    const double base_ev = e_v(a, b);
    const Vec3 axis = normalized(Vec3{1, 1, 0.5});
    TriMesh am = test_support::rigidly_moved(a, axis, 0.8, {3, -2, 1});
    TriMesh bm = test_support::rigidly_moved(b, axis, 0.8, {3, -2, 1});
    CHECK(test_support::rel_diff(msae(am, bm).value, base_msae) < 1e-9);
    CHECK(test_support::rel_diff(e_v(am, bm), base_ev) < 1e-9);
}

TEST_CASE("msae: degenerate faces contribute zero and are side-counted") {
    // Second triangle collapses to a segment in the denoised mesh.
    TriMesh reference = build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}},
                                   {{{0, 1, 2}}, {{1, 3, 2}}});
    TriMesh denoised = build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0.5, 0.5, 0}},
                                  {{{0, 1, 2}}, {{1, 3, 2}}});
    MsaeResult r = msae(denoised, reference);
    CHECK(r.degenerate_faces == 1);
    CHECK(r.value == 0.0);  // the surviving face is unchanged
}

TEST_CASE("flipped_faces: reference and neighborhood modes") {
    TriMesh sphere = shapes::icosphere(2);
    CHECK(flipped_faces(sphere).count == 0);

    std::vector<std::array<int, 3>> faces = sphere.faces;
    std::swap(faces[17][0], faces[17][1]);
    TriMesh one_flip = build_mesh(sphere.positions, faces);

    FlippedFaces vs_ref = flipped_faces(one_flip, &sphere);
    CHECK(vs_ref.count == 1);
    REQUIRE(vs_ref.faces.size() == 1);
    CHECK(vs_ref.faces[0] == 17);

    // Dot-product symmetry: swapping the roles reports the same face.
    FlippedFaces swapped = flipped_faces(sphere, &one_flip);
    CHECK(swapped.faces == vs_ref.faces);

    // Neighborhood mode spots it too.
    CHECK(flipped_faces(one_flip).count >= 1);
}

TEST_CASE("avg_vertex_error: identity and uniform outward offset") {
    TriMesh m = shapes::icosphere(2);
    VertexErrorResult zero = avg_vertex_error(m, m);
    CHECK(zero.average == 0.0);
    for (double s : zero.signed_field) CHECK(s == 0.0);

    const double eps_out = 0.01;
    const auto normals = vertex_normals_area_weighted(m);
    std::vector<Vec3> pos = m.positions;
    for (int v = 0; v < m.vertex_count(); ++v) pos[v] += eps_out * normals[v];
    TriMesh offset = with_positions(m, std::move(pos));

    VertexErrorResult r = avg_vertex_error(offset, m);
    CHECK(r.average == doctest::Approx(eps_out).epsilon(1e-9));
    for (double s : r.signed_field) CHECK(s == doctest::Approx(eps_out).epsilon(1e-9));

    TriMesh small = shapes::octahedron();
    CHECK_THROWS_AS(avg_vertex_error(m, small), VertexCountMismatch);
}

TEST_CASE("mean_curvature_energy: flat plane is numerically zero") {
    TriMesh grid = shapes::planar_grid(8, 8, 0.5);
    CHECK(mean_curvature_energy(grid) < 1e-6 * grid.bbox_diagonal);
}

TEST_CASE("mean_curvature_energy: remarkable first-iteration decrease") {
    TriMesh sphere = shapes::icosphere(4);
    TriMesh noisy = add_noise(sphere, NoiseSpec{0.2, 29});
    const double before = mean_curvature_energy(noisy);

    // Recorded on this fixture: uniform drops to 0.36x, the half-kernel
    // flow to 0.63x (its conservative argmin-||delta|| selection keeps the
    // clean sphere's curvature floor of ~7.2 untouched).
    HloConfig cfg;
    cfg.iterations = 1;
    const double after_hlo = mean_curvature_energy(denoise(noisy, cfg).mesh);
    CHECK(after_hlo < 0.7 * before);

    const double after_uniform = mean_curvature_energy(
        smooth_iterations(noisy, LaplacianKind::uniform, FlowConfig{1.0, 1, true}).mesh);
    CHECK(after_uniform < 0.5 * before);
}

TEST_CASE("mean_curvature_energy: refinement converges monotonically") {
    // On the unit sphere the discrete energy should settle towards a limit:
    // successive refinements move it by less and less.
    double prev = mean_curvature_energy(shapes::icosphere(1));
    double prev_gap = std::numeric_limits<double>::max();
    for (int level = 2; level <= 4; ++level) {
        const double current = mean_curvature_energy(shapes::icosphere(level));
        const double gap = std::abs(current - prev);
        CHECK(gap < prev_gap);
        prev_gap = gap;
        prev = current;
    }
}

TEST_CASE("enclosed_volume: cube, reversed cube, icosphere") {
    TriMesh cube = shapes::subdivided_cube(1);
    CHECK(enclosed_volume(cube) == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<std::array<int, 3>> reversed = cube.faces;
    for (auto& f : reversed) std::swap(f[1], f[2]);
    TriMesh inside_out = build_mesh(cube.positions, reversed);
    CHECK(enclosed_volume(inside_out) == doctest::Approx(-1.0).epsilon(1e-12));

    const double limit = 4.0 * std::numbers::pi / 3.0;
    double prev = 0.0;
    for (int level = 1; level <= 3; ++level) {
        const double vol = enclosed_volume(shapes::icosphere(level));
        CHECK(vol < limit);
        CHECK(vol > prev);  // converging from below
        prev = vol;
    }

    CHECK_THROWS_AS(enclosed_volume(shapes::planar_grid(3, 3)), OpenMesh);
}

TEST_CASE("QualityReport: stable CSV order and identity row") {
    CHECK(QualityReport::csv_header() ==
          "e_v,msae,avg_vertex_error,mean_curvature_energy,flipped_faces,enclosed_volume,"
          "runtime_seconds");
    TriMesh m = shapes::icosphere(1);
    QualityReport r = evaluate_quality(m, m, 0.0);
    CHECK(r.e_v == 0.0);
    CHECK(r.msae == 0.0);
    CHECK(r.avg_vertex_error == 0.0);
    CHECK(r.flipped_faces == 0);
    CHECK(r.enclosed_volume > 0.0);
    const std::string row = r.csv_row();
    CHECK(std::count(row.begin(), row.end(), ',') == 6);
}
