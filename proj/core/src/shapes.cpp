#include "hlo/shapes.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace hlo {
namespace shapes {

TriMesh octahedron(double radius) {
    const double r = radius;
    std::vector<Vec3> pos = {{r, 0, 0}, {-r, 0, 0}, {0, r, 0}, {0, -r, 0}, {0, 0, r}, {0, 0, -r}};
    std::vector<std::array<int, 3>> faces = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                                             {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
    return build_mesh(std::move(pos), std::move(faces));
}

TriMesh subdivided_cube(int segments) {
    if (segments < 1) throw std::invalid_argument("subdivided_cube: segments must be >= 1");
    const int n = segments;

    // Lattice points are integer triples in [0, n]^3 with at least one
    // coordinate on the hull; welding by exact integer key keeps shared
    // edge/corner vertices unique.
    std::map<std::array<int, 3>, int> index;
    std::vector<Vec3> positions;
    auto vertex = [&](int x, int y, int z) {
        const std::array<int, 3> key = {x, y, z};
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        const int id = static_cast<int>(positions.size());
        index.emplace(key, id);
        positions.push_back({static_cast<double>(x) / n, static_cast<double>(y) / n,
                             static_cast<double>(z) / n});
        return id;
    };

    std::vector<std::array<int, 3>> faces;
    faces.reserve(static_cast<std::size_t>(12) * n * n);

    // Each face: origin + i*u + j*v over the grid, u x v pointing outward.
    struct Frame {
        std::array<int, 3> origin, u, v;
    };
    const std::vector<Frame> frames = {
        {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}},  // z = 0, outward -z
        {{0, 0, n}, {1, 0, 0}, {0, 1, 0}},  // z = n, outward +z
        {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}},  // y = 0, outward -y
        {{0, n, 0}, {0, 0, 1}, {1, 0, 0}},  // y = n, outward +y
        {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}},  // x = 0, outward -x
        {{n, 0, 0}, {0, 1, 0}, {0, 0, 1}},  // x = n, outward +x
    };
    for (const Frame& fr : frames) {
        auto at = [&](int i, int j) {
            return vertex(fr.origin[0] + i * fr.u[0] + j * fr.v[0],
                          fr.origin[1] + i * fr.u[1] + j * fr.v[1],
                          fr.origin[2] + i * fr.u[2] + j * fr.v[2]);
        };
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const int p00 = at(i, j);
                const int p10 = at(i + 1, j);
                const int p11 = at(i + 1, j + 1);
                const int p01 = at(i, j + 1);
                faces.push_back({p00, p10, p11});
                faces.push_back({p00, p11, p01});
            }
        }
    }
    return build_mesh(std::move(positions), std::move(faces));
}

TriMesh icosphere(int subdivisions) {
    if (subdivisions < 0) throw std::invalid_argument("icosphere: subdivisions must be >= 0");
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> pos = {{-1, t, 0}, {1, t, 0},   {-1, -t, 0}, {1, -t, 0},
                             {0, -1, t}, {0, 1, t},   {0, -1, -t}, {0, 1, -t},
                             {t, 0, -1}, {t, 0, 1},   {-t, 0, -1}, {-t, 0, 1}};
    for (Vec3& p : pos) p = normalized(p);
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
        {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
        {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

    for (int level = 0; level < subdivisions; ++level) {
        std::unordered_map<std::uint64_t, int> midpoint;
        midpoint.reserve(faces.size() * 3);
        auto mid = [&](int a, int b) {
            const std::uint64_t key = a < b
                                          ? (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b)
                                          : (static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint32_t>(a);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const int id = static_cast<int>(pos.size());
            midpoint.emplace(key, id);
            pos.push_back(normalized((pos[a] + pos[b]) * 0.5));
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& [a, b, c] : faces) {
            const int ab = mid(a, b);
            const int bc = mid(b, c);
            const int ca = mid(c, a);
            next.push_back({a, ab, ca});
            next.push_back({b, bc, ab});
            next.push_back({c, ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    return build_mesh(std::move(pos), std::move(faces));
}

TriMesh planar_grid(int nx, int ny, double spacing) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("planar_grid: need at least 1x1 cells");
    std::vector<Vec3> pos;
    pos.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) pos.push_back({i * spacing, j * spacing, 0.0});
    auto at = [&](int i, int j) { return j * (nx + 1) + i; };
    std::vector<std::array<int, 3>> faces;
    faces.reserve(static_cast<std::size_t>(2) * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
            faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
        }
    }
    return build_mesh(std::move(pos), std::move(faces));
}

}  // namespace shapes
}  // namespace hlo
