#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hlo/mesh.hpp"

namespace hlo {

enum class LaplacianKind { uniform, cotangent, half_kernel };

/// Per-vertex differential coordinates.
struct LaplacianField {
    std::vector<Vec3> vectors;
    LaplacianKind kind = LaplacianKind::uniform;
};

/// Explicit diffusion-flow parameters. `step` is the combined lambda*dt.
struct FlowConfig {
    double step = 1.0;
    int iterations = 1;
    bool fix_boundaries = true;
};

/// delta_i = v_i - mean of one-ring positions. Throws IsolatedVertex.
LaplacianField uniform_laplacian(const TriMesh& mesh);
LaplacianField uniform_laplacian(const TriMesh& topology, std::span<const Vec3> positions);

/// Normalized cotangent-weight Laplacian (area-free form):
/// delta_i = (1/sum w_ik) * sum w_ik (v_i - v_k), w_ik = (cot a + cot b)/2,
/// boundary edges use their single opposite angle, weights clamped to
/// [0, 1e4] before normalization. Throws IsolatedVertex.
LaplacianField cotangent_laplacian(const TriMesh& mesh);
LaplacianField cotangent_laplacian(const TriMesh& topology, std::span<const Vec3> positions);

/// One Jacobi step of v <- v - step * delta. The field must have been
/// computed from `positions`. With fix_boundaries, boundary vertices are
/// copied bit-identically. Throws LengthMismatch.
std::vector<Vec3> flow_step(const TriMesh& topology, std::span<const Vec3> positions,
                            const LaplacianField& field, const FlowConfig& cfg);

struct IterationStats {
    int iteration = 0;
    double avg_displacement = 0.0;
    double total_delta_norm = 0.0;
};

/// Invoked after each iteration with the fresh position buffer.
using IterationCallback = std::function<void(int iteration, std::span<const Vec3> positions)>;

struct SmoothResult {
    TriMesh mesh;
    std::vector<IterationStats> trace;
};

/// Runs cfg.iterations of uniform or cotangent diffusion (explicit update,
/// field recomputed from the previous iterate each sweep).
SmoothResult smooth_iterations(const TriMesh& mesh, LaplacianKind kind, const FlowConfig& cfg,
                               const IterationCallback& callback = {});

}  // namespace hlo
