#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hlo/vec3.hpp"

namespace hlo {

/// Indexed triangle mesh with precomputed adjacency and boundary flags.
/// Immutable after build_mesh(); all queries are pure reads and thread-safe.
struct TriMesh {
    std::vector<Vec3> positions;
    std::vector<std::array<int, 3>> faces;

    // vertex_neighbors[i] holds the one-ring of i, ascending, no duplicates.
    std::vector<std::vector<int>> vertex_neighbors;
    std::vector<std::vector<int>> vertex_faces;
    std::vector<std::uint8_t> boundary_vertex;

    // Edges shared by more than two faces are accepted for adjacency but
    // counted here as a mesh-health signal.
    int nonmanifold_edge_count = 0;

    double bbox_diagonal = 0.0;

    int vertex_count() const { return static_cast<int>(positions.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }
};

/// One-ring of a vertex plus its centroid and local normal. `neighbors`
/// views into the owning TriMesh; `local_normal` is nullopt when the vertex
/// sits at the centroid of its ring (within the degeneracy tolerance).
struct VertexNeighborhood {
    int center = -1;
    std::span<const int> neighbors;
    Vec3 centroid{};
    std::optional<Vec3> local_normal;
};

/// Builds adjacency and boundary flags. Face winding is preserved as given.
/// Throws IndexOutOfRange, DegenerateFace (repeated index), EmptyMesh.
TriMesh build_mesh(std::vector<Vec3> positions, std::vector<std::array<int, 3>> faces);

/// Returns a mesh with the same topology (adjacency reused) and new positions.
TriMesh with_positions(const TriMesh& topology, std::vector<Vec3> positions);

/// Degeneracy tolerance: 1e-12 x bounding-box diagonal of `positions`.
double degeneracy_epsilon(std::span<const Vec3> positions);
double bbox_diagonal(std::span<const Vec3> positions);

/// One-ring centroid and local normal of vertex v. Throws IsolatedVertex.
VertexNeighborhood neighborhood(const TriMesh& mesh, int v);
/// Same, evaluated against an alternative position buffer (topology from
/// `mesh`); `epsilon` is the precomputed degeneracy tolerance for `positions`.
VertexNeighborhood neighborhood(const TriMesh& mesh, std::span<const Vec3> positions, int v,
                                double epsilon);

/// Arithmetic mean of the unique undirected edge lengths. Throws EmptyMesh.
double mean_edge_length(const TriMesh& mesh);

/// Unit normal of face f, respecting stored winding.
/// Throws GeometricallyDegenerateFace when the face is collinear.
Vec3 face_normal(const TriMesh& mesh, int f);

/// Area-weighted vertex normals (sum of incident face cross products,
/// normalized). Vertices with no incident area get the zero vector.
std::vector<Vec3> vertex_normals_area_weighted(const TriMesh& mesh);

}  // namespace hlo
