#pragma once

#include "hlo/mesh.hpp"

namespace hlo {
namespace shapes {

/// Regular octahedron: 6 vertices on the axes, 8 faces, closed.
TriMesh octahedron(double radius = 1.0);

/// Axis-aligned cube surface [0,1]^3 with `segments` grid cells per edge,
/// outward winding, shared vertices welded exactly. segments = 1 gives the
/// 12-triangle unit cube.
TriMesh subdivided_cube(int segments);

/// Unit icosphere: icosahedron refined `subdivisions` times, vertices
/// projected to the unit sphere. Vertex counts: 12, 42, 162, 642, 2562,
/// 10242, ...
TriMesh icosphere(int subdivisions);

/// Open planar grid in z = 0 with (nx+1) x (ny+1) vertices at `spacing`.
TriMesh planar_grid(int nx, int ny, double spacing = 1.0);

}  // namespace shapes
}  // namespace hlo
