#include "hlo/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "hlo/errors.hpp"

namespace hlo {

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

namespace {

inline std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

double bbox_diagonal(std::span<const Vec3> positions) {
    if (positions.empty()) return 0.0;
    Vec3 lo = positions.front();
    Vec3 hi = positions.front();
    for (const Vec3& p : positions) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
        hi.z = std::max(hi.z, p.z);
    }
    return norm(hi - lo);
}

double degeneracy_epsilon(std::span<const Vec3> positions) {
    return 1e-12 * bbox_diagonal(positions);
}

TriMesh build_mesh(std::vector<Vec3> positions, std::vector<std::array<int, 3>> faces) {
    if (faces.empty()) throw EmptyMesh("build_mesh: mesh has no faces");

    const int nv = static_cast<int>(positions.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto& [a, b, c] = faces[f];
        for (int idx : {a, b, c}) {
            if (idx < 0 || idx >= nv)
                throw IndexOutOfRange("build_mesh: face " + std::to_string(f) +
                                      " references vertex " + std::to_string(idx) + " (have " +
                                      std::to_string(nv) + ")");
        }
        if (a == b || b == c || a == c)
            throw DegenerateFace("build_mesh: face " + std::to_string(f) +
                                 " repeats a vertex index");
    }

    TriMesh mesh;
    mesh.positions = std::move(positions);
    mesh.faces = std::move(faces);
    mesh.vertex_neighbors.resize(nv);
    mesh.vertex_faces.resize(nv);
    mesh.boundary_vertex.assign(nv, 0);

    std::unordered_map<std::uint64_t, int> edge_faces;
    edge_faces.reserve(mesh.faces.size() * 3);

    for (int f = 0; f < mesh.face_count(); ++f) {
        const auto& tri = mesh.faces[f];
        for (int e = 0; e < 3; ++e) {
            const int a = tri[e];
            const int b = tri[(e + 1) % 3];
            mesh.vertex_neighbors[a].push_back(b);
            mesh.vertex_neighbors[b].push_back(a);
            ++edge_faces[edge_key(a, b)];
            mesh.vertex_faces[a].push_back(f);
        }
    }

    for (auto& ring : mesh.vertex_neighbors) {
        std::sort(ring.begin(), ring.end());
        ring.erase(std::unique(ring.begin(), ring.end()), ring.end());
    }
    for (auto& vf : mesh.vertex_faces) {
        std::sort(vf.begin(), vf.end());
        vf.erase(std::unique(vf.begin(), vf.end()), vf.end());
    }

    for (const auto& [key, count] : edge_faces) {
        if (count == 1) {
            mesh.boundary_vertex[static_cast<int>(key >> 32)] = 1;
            mesh.boundary_vertex[static_cast<int>(key & 0xffffffffu)] = 1;
        } else if (count > 2) {
            ++mesh.nonmanifold_edge_count;
        }
    }

    mesh.bbox_diagonal = bbox_diagonal(mesh.positions);
    return mesh;
}

TriMesh with_positions(const TriMesh& topology, std::vector<Vec3> positions) {
    if (positions.size() != topology.positions.size())
        throw LengthMismatch("with_positions: got " + std::to_string(positions.size()) +
                             " positions for " + std::to_string(topology.positions.size()) +
                             " vertices");
    TriMesh mesh = topology;
    mesh.positions = std::move(positions);
    mesh.bbox_diagonal = bbox_diagonal(mesh.positions);
    return mesh;
}

VertexNeighborhood neighborhood(const TriMesh& mesh, std::span<const Vec3> positions, int v,
                                double epsilon) {
    if (v < 0 || v >= mesh.vertex_count())
        throw IndexOutOfRange("neighborhood: vertex " + std::to_string(v));
    const auto& ring = mesh.vertex_neighbors[v];
    if (ring.empty())
        throw IsolatedVertex("neighborhood: vertex " + std::to_string(v) + " has no neighbors");

    Vec3 sum{};
    for (int n : ring) sum += positions[n];
    const Vec3 centroid = sum / static_cast<double>(ring.size());

    VertexNeighborhood nbh;
    nbh.center = v;
    nbh.neighbors = std::span<const int>(ring);
    nbh.centroid = centroid;
    const Vec3 dir = positions[v] - centroid;
    if (norm(dir) >= epsilon && squared_norm(dir) > 0.0) nbh.local_normal = normalized(dir);
    return nbh;
}

VertexNeighborhood neighborhood(const TriMesh& mesh, int v) {
    return neighborhood(mesh, mesh.positions, v, 1e-12 * mesh.bbox_diagonal);
}

double mean_edge_length(const TriMesh& mesh) {
    if (mesh.faces.empty()) throw EmptyMesh("mean_edge_length: mesh has no faces");
    std::vector<std::uint64_t> edges;
    edges.reserve(mesh.faces.size() * 3);
    for (const auto& tri : mesh.faces)
        for (int e = 0; e < 3; ++e) edges.push_back(edge_key(tri[e], tri[(e + 1) % 3]));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    if (edges.empty()) throw EmptyMesh("mean_edge_length: mesh has no edges");

    double total = 0.0;
    for (std::uint64_t key : edges) {
        const int a = static_cast<int>(key >> 32);
        const int b = static_cast<int>(key & 0xffffffffu);
        total += norm(mesh.positions[a] - mesh.positions[b]);
    }
    return total / static_cast<double>(edges.size());
}

Vec3 face_normal(const TriMesh& mesh, int f) {
    if (f < 0 || f >= mesh.face_count())
        throw IndexOutOfRange("face_normal: face " + std::to_string(f));
    const auto& [i0, i1, i2] = mesh.faces[f];
    const Vec3& p0 = mesh.positions[i0];
    const Vec3& p1 = mesh.positions[i1];
    const Vec3& p2 = mesh.positions[i2];
    const Vec3 n = cross(p1 - p0, p2 - p0);
    const double longest =
        std::max({norm(p1 - p0), norm(p2 - p0), norm(p2 - p1)});
    // ||n|| = longest * height of the opposite vertex; degenerate when that
    // height drops below the mesh-relative tolerance.
    if (norm(n) <= 1e-12 * mesh.bbox_diagonal * longest || squared_norm(n) == 0.0)
        throw GeometricallyDegenerateFace("face_normal: face " + std::to_string(f) +
                                          " is geometrically degenerate");
    return normalized(n);
}

std::vector<Vec3> vertex_normals_area_weighted(const TriMesh& mesh) {
    std::vector<Vec3> normals(mesh.vertex_count());
    for (const auto& [a, b, c] : mesh.faces) {
        const Vec3 n = cross(mesh.positions[b] - mesh.positions[a],
                             mesh.positions[c] - mesh.positions[a]);
        normals[a] += n;
        normals[b] += n;
        normals[c] += n;
    }
    for (Vec3& n : normals) {
        const double len = norm(n);
        if (len > 0.0) n = n / len;
    }
    return normals;
}

}  // namespace hlo
