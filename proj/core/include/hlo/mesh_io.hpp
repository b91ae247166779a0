#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hlo/mesh.hpp"

namespace hlo {

enum class MeshFormat { obj, off, autodetect };

/// Reads a Wavefront OBJ or OFF mesh. Only geometry is honored: OBJ `vn`,
/// `vt`, groups and materials are skipped; faces with more than three sides
/// are fan-triangulated. Positions and faces come back exactly as stored
/// (no welding, no reordering). Throws ParseError, UnsupportedFormat, IoError.
TriMesh read_mesh(const std::filesystem::path& path, MeshFormat format = MeshFormat::autodetect);
TriMesh read_mesh(std::istream& in, MeshFormat format);

/// Writes OBJ or OFF with 15 significant digits (round-trips well under the
/// 1e-9 relative contract). Throws IoError, UnsupportedFormat.
void write_mesh(const TriMesh& mesh, const std::filesystem::path& path,
                MeshFormat format = MeshFormat::autodetect);
void write_mesh(const TriMesh& mesh, std::ostream& out, MeshFormat format);

enum class FieldTarget { vertex, face };

/// Per-vertex or per-face scalars, written as CSV with header `index,value`.
struct ScalarField {
    FieldTarget target = FieldTarget::vertex;
    std::vector<double> values;
    std::string label;
};

/// Throws LengthMismatch when the value count disagrees with the mesh.
void write_scalar_field(const ScalarField& field, const TriMesh& mesh,
                        const std::filesystem::path& path);
void write_scalar_field(const ScalarField& field, const TriMesh& mesh, std::ostream& out);

}  // namespace hlo
