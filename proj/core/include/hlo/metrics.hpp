#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hlo/mesh.hpp"

namespace hlo {

enum class NoiseDirection { isotropic, along_normal };

/// Gaussian noise specification. sigma_n = sigma_factor * mean edge length.
struct NoiseSpec {
    double sigma_factor = 0.0;
    std::uint64_t seed = 0;
    NoiseDirection direction = NoiseDirection::isotropic;
};

/// Adds zero-mean Gaussian noise. Isotropic mode perturbs each coordinate
/// i.i.d.; along_normal perturbs along the area-weighted vertex normal.
/// Per-vertex counter-based streams: bit-deterministic for a fixed seed,
/// independent of traversal order. sigma_factor = 0 returns the input
/// unchanged. Topology is untouched.
TriMesh add_noise(const TriMesh& mesh, const NoiseSpec& spec);

/// Area-weighted L2 vertex-to-surface distance from `denoised` into the
/// `reference` surface (whose topology may differ):
/// E_v = sqrt( sum_i w_i dist(x_i, T)^2 / (3 sum_k A_k) ), with w_i the
/// total area of denoised faces incident to vertex i and A_k the denoised
/// face areas. dist is the exact closest-triangle distance.
double e_v(const TriMesh& denoised, const TriMesh& reference);

struct MsaeResult {
    double value = 0.0;       // mean squared angle between face normals, radians^2
    int degenerate_faces = 0; // faces contributing theta = 0 for lack of a normal
};

/// Requires identical face counts and correspondence. Throws FaceCountMismatch.
MsaeResult msae(const TriMesh& denoised, const TriMesh& reference);

struct FlippedFaces {
    int count = 0;
    std::vector<int> faces;
};

/// With a reference: face k is flipped iff its normal opposes the
/// reference's (negative dot). Without one: iff its normal opposes the
/// average normal of its edge-adjacent faces.
FlippedFaces flipped_faces(const TriMesh& mesh, const TriMesh* reference = nullptr);

struct VertexErrorResult {
    double average = 0.0;
    // (v_denoised - v_gt) . n_gt, n_gt the area-weighted ground-truth
    // vertex normal; positive = outward displacement.
    std::vector<double> signed_field;
};

/// One-to-one vertex error. Throws VertexCountMismatch.
VertexErrorResult avg_vertex_error(const TriMesh& denoised, const TriMesh& ground_truth);

/// Sum over interior vertices of the cotangent-Laplacian magnitude
/// (area-free normalized form). A global smoothness score; open-boundary
/// vertices are excluded so a flat open grid scores ~0.
double mean_curvature_energy(const TriMesh& mesh);

/// Signed divergence-theorem volume sum((p0 . (p1 x p2)) / 6). Requires a
/// closed mesh (throws OpenMesh); sign follows the stored winding.
double enclosed_volume(const TriMesh& mesh);

struct QualityReport {
    double e_v = 0.0;
    double msae = 0.0;
    double avg_vertex_error = 0.0;
    double mean_curvature_energy = 0.0;
    int flipped_faces = 0;
    double enclosed_volume = 0.0;  // 0 when the mesh is open
    double runtime_seconds = 0.0;

    static std::string csv_header();
    std::string csv_row() const;
    std::string pretty() const;
};

/// Assembles the full report of `denoised` against `ground_truth`
/// (flipped faces in reference mode; enclosed_volume 0 for open meshes).
QualityReport evaluate_quality(const TriMesh& denoised, const TriMesh& ground_truth,
                               double runtime_seconds = 0.0);

}  // namespace hlo
