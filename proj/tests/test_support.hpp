#pragma once

#include <cmath>
#include <vector>

#include "hlo/mesh.hpp"

namespace test_support {

// Rodrigues rotation about a unit axis.
inline hlo::Vec3 rotate(const hlo::Vec3& p, const hlo::Vec3& axis, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return p * c + cross(axis, p) * s + axis * (dot(axis, p) * (1.0 - c));
}

inline hlo::TriMesh rigidly_moved(const hlo::TriMesh& mesh, const hlo::Vec3& axis, double angle,
                                  const hlo::Vec3& translation) {
    std::vector<hlo::Vec3> moved;
    moved.reserve(mesh.positions.size());
    for (const auto& p : mesh.positions) moved.push_back(rotate(p, axis, angle) + translation);
    return hlo::with_positions(mesh, std::move(moved));
}

// Apex at (0,0,1) over a regular hexagon in z = 0; coordinates chosen so the
// ring centroid is exactly the origin in double arithmetic.
inline hlo::TriMesh hexagon_fan() {
    const double h = 0.8660254037844386;  // sqrt(3)/2
    std::vector<hlo::Vec3> pos = {{0, 0, 1},     {1, 0, 0},   {0.5, h, 0}, {-0.5, h, 0},
                                  {-1, 0, 0},    {-0.5, -h, 0}, {0.5, -h, 0}};
    std::vector<std::array<int, 3>> faces;
    for (int k = 1; k <= 6; ++k) faces.push_back({0, k, k % 6 + 1});
    return hlo::build_mesh(std::move(pos), std::move(faces));
}

// Unit square split along the (0,0)-(1,1) diagonal.
inline hlo::TriMesh square_two_triangles() {
    std::vector<hlo::Vec3> pos = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    std::vector<std::array<int, 3>> faces = {{0, 1, 2}, {0, 2, 3}};
    return hlo::build_mesh(std::move(pos), std::move(faces));
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace test_support
