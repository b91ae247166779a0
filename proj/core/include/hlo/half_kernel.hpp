#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hlo/laplacian.hpp"
#include "hlo/mesh.hpp"

namespace hlo {

/// One partition of a one-ring into left/right half windows. Both subsets
/// contain the pair endpoints (`start`, `paired`), which lie on the
/// splitting plane, so each subset has at least two members.
struct HalfWindowPair {
    int start = -1;   // the starting neighbor v_k
    int paired = -1;  // the neighbor nearest the pairing plane
    std::vector<int> left;
    std::vector<int> right;
};

/// How the regularization energy treats the data term. `literal` scores
/// ||delta|| + ||v_t - v_0|| (the data term is candidate-invariant, so
/// selection reduces to the smallest ||delta||); `candidate_position`
/// scores the candidate's updated position against v_0 instead.
enum class EnergyMode { literal, candidate_position };

/// Tie rule when several neighbors are equally close to the pairing plane.
enum class TieBreak { lowest_index, seeded_random };

struct HloConfig {
    int iterations = 1;  // the method's single tuning parameter
    double step = 1.0;
    bool fix_boundaries = true;
    EnergyMode energy_mode = EnergyMode::literal;
    TieBreak tie_break = TieBreak::lowest_index;
    std::uint64_t rng_seed = 0;  // only used by seeded_random tie-breaking
    int threads = 1;
};

/// Winning half-kernel Laplacian for one vertex. `window` indexes the
/// flattened subset list (2*pair + 0 for left, +1 for right); -1 marks the
/// degenerate paths (null local normal, or rings smaller than 3 where the
/// projected full-window Laplacian is used instead).
struct HloCandidate {
    int window = -1;
    Vec3 raw{};        // d: uniform Laplacian of the chosen subset
    Vec3 projected{};  // delta = (d . n) n
    double energy = 0.0;
};

/// Enumerates all |NV(v)| half-window pairs (2|NV(v)| subsets) of a vertex.
/// For each starting neighbor v_k: the pairing plane runs through v, the
/// ring centroid and v_k (degenerating to a line when those are collinear);
/// the neighbor nearest that plane becomes `paired`; remaining neighbors
/// split by the sign of their distance to the plane through v, v_k and
/// `paired` (zero-distance members go left). When v, v_k and `paired` are
/// themselves collinear, the splitting plane falls back to the plane that
/// contains their common line and is orthogonal to the component of the
/// local normal perpendicular to it; this keeps windows well-defined on
/// straight feature edges, where one window collapses to the bare pair.
/// Throws TooFewNeighbors when |NV(v)| < 3, IsolatedVertex when empty.
std::vector<HalfWindowPair> generate_half_windows(const TriMesh& mesh,
                                                  const VertexNeighborhood& nbh,
                                                  TieBreak tie_break = TieBreak::lowest_index,
                                                  std::uint64_t rng_seed = 0);
std::vector<HalfWindowPair> generate_half_windows(const TriMesh& topology,
                                                  std::span<const Vec3> positions, int v,
                                                  double epsilon,
                                                  TieBreak tie_break = TieBreak::lowest_index,
                                                  std::uint64_t rng_seed = 0);

/// Evaluates every half-window subset of vertex v against the current
/// positions: d = mean of (v - v_m) over the subset, delta = (d . n) n with
/// n the full-window local normal, energy = ||delta|| + data term against
/// `original_position`. Returns the minimal-energy candidate (sentinel
/// 1e6; throws NoCandidate when nothing beats it). A vertex sitting at its
/// ring centroid returns delta = 0 without a subset search.
HloCandidate half_kernel_laplacian(const TriMesh& mesh, int v, const Vec3& original_position,
                                   const HloConfig& cfg);
HloCandidate half_kernel_laplacian(const TriMesh& topology, std::span<const Vec3> positions,
                                   int v, const Vec3& original_position, const HloConfig& cfg,
                                   double epsilon);

struct DenoiseResult {
    TriMesh mesh;
    std::vector<IterationStats> trace;
};

/// Iterative half-kernel denoising: each sweep selects a half-kernel
/// Laplacian per vertex against a frozen snapshot (Jacobi) and the original
/// positions captured at entry, then applies one diffusion step. Boundary
/// vertices stay bit-identical when cfg.fix_boundaries is set.
DenoiseResult denoise(const TriMesh& mesh, const HloConfig& cfg,
                      const IterationCallback& callback = {});

}  // namespace hlo
