#include "hlo/half_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "detail/parallel.hpp"
#include "detail/rng.hpp"
#include "hlo/errors.hpp"

namespace hlo {

namespace {

// Initial best energy. A candidate that cannot beat it means the mesh scale
// is pathological and must be surfaced, not silently accepted.
constexpr double kEnergySentinel = 1e6;

enum : std::int8_t { kLeft = 0, kRight = 1, kPair = 2 };

struct SplitScratch {
    std::vector<double> dist;
    std::vector<std::int8_t> side;
};

Vec3 least_aligned_axis(const Vec3& u) {
    const double ax = std::abs(u.x), ay = std::abs(u.y), az = std::abs(u.z);
    if (ax <= ay && ax <= az) return {1.0, 0.0, 0.0};
    if (ay <= az) return {0.0, 1.0, 0.0};
    return {0.0, 0.0, 1.0};
}

// Partitions the ring of `center` for one starting neighbor. Fills
// scratch.side (kPair for the two endpoints) and returns the ring position
// of the paired neighbor, or -1 when the geometry is fully degenerate (all
// remaining members are then assigned left).
int split_ring(const Vec3& a, std::span<const int> ring, std::span<const Vec3> pos,
               const Vec3& centroid, const Vec3* local_normal, int start_pos, double eps,
               TieBreak tie_break, std::uint64_t tie_state, SplitScratch& scratch) {
    const int m = static_cast<int>(ring.size());
    scratch.dist.resize(m);
    scratch.side.assign(m, kLeft);

    const Vec3 s = pos[ring[start_pos]];
    const Vec3 to_centroid = centroid - a;
    const Vec3 to_start = s - a;

    // Distance of every other neighbor to the pairing plane through
    // (v, centroid, v_k) -- or to their common line when collinear.
    const Vec3 pairing_cross = cross(to_centroid, to_start);
    const double span = std::max(norm(to_centroid), norm(to_start));
    if (norm(pairing_cross) > eps * span) {
        const Vec3 n1 = normalized(pairing_cross);
        for (int j = 0; j < m; ++j) scratch.dist[j] = std::abs(dot(pos[ring[j]] - a, n1));
    } else {
        const Vec3 dir = norm(to_start) >= norm(to_centroid) ? to_start : to_centroid;
        if (norm(dir) > eps) {
            const Vec3 u = normalized(dir);
            for (int j = 0; j < m; ++j) {
                const Vec3 rel = pos[ring[j]] - a;
                scratch.dist[j] = norm(rel - dot(rel, u) * u);
            }
        } else {
            for (int j = 0; j < m; ++j) scratch.dist[j] = norm(pos[ring[j]] - a);
        }
    }

    int paired = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
        if (j == start_pos) continue;
        if (scratch.dist[j] < best) {
            best = scratch.dist[j];
            paired = j;
        }
    }
    if (paired < 0) return -1;
    if (tie_break == TieBreak::seeded_random) {
        int ties = 0;
        for (int j = 0; j < m; ++j)
            if (j != start_pos && scratch.dist[j] == best) ++ties;
        if (ties > 1) {
            detail::Stream stream(tie_state);
            auto pick = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(ties)));
            for (int j = 0; j < m; ++j) {
                if (j == start_pos || scratch.dist[j] != best) continue;
                if (pick-- == 0) {
                    paired = j;
                    break;
                }
            }
        }
    }
    scratch.side[start_pos] = kPair;
    scratch.side[paired] = kPair;

    // Splitting plane through (v, v_k, paired). When those are collinear
    // (straight feature edges), use the plane containing their line whose
    // normal is the local normal's component orthogonal to it: every
    // neighbor off the edge then falls on one side and the opposite window
    // collapses to the bare pair.
    const Vec3 to_paired = pos[ring[paired]] - a;
    Vec3 w = cross(to_start, to_paired);
    const double chord = std::max(norm(to_start), norm(to_paired));
    if (norm(w) <= eps * chord) {
        const Vec3 dir = norm(to_start) >= norm(to_paired) ? to_start : to_paired;
        if (norm(dir) <= eps) return paired;  // coincident points: all stay left
        const Vec3 u = normalized(dir);
        Vec3 base = local_normal ? *local_normal : least_aligned_axis(u);
        w = base - dot(base, u) * u;
        if (squared_norm(w) == 0.0) {
            base = least_aligned_axis(u);
            w = base - dot(base, u) * u;
        }
    }
    const Vec3 wn = normalized(w);
    for (int j = 0; j < m; ++j) {
        if (scratch.side[j] == kPair) continue;
        scratch.side[j] = dot(pos[ring[j]] - a, wn) < 0.0 ? kRight : kLeft;
    }
    return paired;
}

}  // namespace

std::vector<HalfWindowPair> generate_half_windows(const TriMesh& topology,
                                                  std::span<const Vec3> positions, int v,
                                                  double epsilon, TieBreak tie_break,
                                                  std::uint64_t rng_seed) {
    if (v < 0 || v >= topology.vertex_count())
        throw IndexOutOfRange("generate_half_windows: vertex " + std::to_string(v));
    const auto& ring = topology.vertex_neighbors[v];
    if (ring.empty())
        throw IsolatedVertex("generate_half_windows: vertex " + std::to_string(v) +
                             " has no neighbors");
    if (ring.size() < 3)
        throw TooFewNeighbors("generate_half_windows: vertex " + std::to_string(v) + " has " +
                              std::to_string(ring.size()) + " neighbors, need 3");

    const int m = static_cast<int>(ring.size());
    Vec3 sum{};
    for (int n : ring) sum += positions[n];
    const Vec3 centroid = sum / static_cast<double>(m);
    const Vec3 a = positions[v];
    const Vec3 dir = a - centroid;
    Vec3 normal{};
    const bool has_normal = norm(dir) >= epsilon && squared_norm(dir) > 0.0;
    if (has_normal) normal = normalized(dir);

    std::vector<HalfWindowPair> out;
    out.reserve(m);
    SplitScratch scratch;
    for (int k = 0; k < m; ++k) {
        const std::uint64_t tie_state = detail::mix(detail::mix(rng_seed, v), ring[k]);
        const int paired = split_ring(a, ring, positions, centroid, has_normal ? &normal : nullptr,
                                      k, epsilon, tie_break, tie_state, scratch);
        HalfWindowPair pair;
        pair.start = ring[k];
        pair.paired = paired >= 0 ? ring[paired] : ring[k];
        for (int j = 0; j < m; ++j) {
            switch (scratch.side[j]) {
                case kPair:
                    pair.left.push_back(ring[j]);
                    pair.right.push_back(ring[j]);
                    break;
                case kLeft: pair.left.push_back(ring[j]); break;
                case kRight: pair.right.push_back(ring[j]); break;
            }
        }
        out.push_back(std::move(pair));
    }
    return out;
}

std::vector<HalfWindowPair> generate_half_windows(const TriMesh& mesh,
                                                  const VertexNeighborhood& nbh,
                                                  TieBreak tie_break, std::uint64_t rng_seed) {
    return generate_half_windows(mesh, mesh.positions, nbh.center,
                                 1e-12 * mesh.bbox_diagonal, tie_break, rng_seed);
}

namespace {

HloCandidate select_candidate(const TriMesh& topology, std::span<const Vec3> positions, int v,
                              const Vec3& original_position, const HloConfig& cfg, double epsilon,
                              SplitScratch& scratch) {
    const auto& ring = topology.vertex_neighbors[v];
    if (ring.empty())
        throw IsolatedVertex("half_kernel_laplacian: vertex " + std::to_string(v) +
                             " has no neighbors");

    const int m = static_cast<int>(ring.size());
    const Vec3 a = positions[v];
    Vec3 sum{};
    for (int n : ring) sum += positions[n];
    const Vec3 centroid = sum / static_cast<double>(m);
    const Vec3 full = a - centroid;
    const double data_literal = norm(a - original_position);

    HloCandidate out;
    if (norm(full) < epsilon || squared_norm(full) == 0.0) {
        // Already locally smooth: no movement, no subset search.
        out.energy = data_literal;
        return out;
    }
    const Vec3 normal = normalized(full);

    auto energy_of = [&](const Vec3& delta) {
        return cfg.energy_mode == EnergyMode::literal
                   ? norm(delta) + data_literal
                   : norm(delta) + norm(a - cfg.step * delta - original_position);
    };

    if (m < 3) {
        // Too small to split: project the full-window Laplacian instead.
        out.raw = full;
        out.projected = dot(full, normal) * normal;
        out.energy = energy_of(out.projected);
        return out;
    }

    double best = kEnergySentinel;
    bool found = false;
    for (int k = 0; k < m; ++k) {
        const std::uint64_t tie_state = detail::mix(detail::mix(cfg.rng_seed, v), ring[k]);
        split_ring(a, ring, positions, centroid, &normal, k, epsilon, cfg.tie_break, tie_state,
                   scratch);
        Vec3 sums[2] = {{}, {}};
        int counts[2] = {0, 0};
        for (int j = 0; j < m; ++j) {
            const Vec3 rel = a - positions[ring[j]];
            if (scratch.side[j] == kPair) {
                sums[0] += rel;
                sums[1] += rel;
                ++counts[0];
                ++counts[1];
            } else {
                sums[scratch.side[j]] += rel;
                ++counts[scratch.side[j]];
            }
        }
        for (int side = 0; side < 2; ++side) {
            // Both windows hold at least the pair endpoints.
            const Vec3 d = sums[side] / static_cast<double>(counts[side]);
            const Vec3 delta = dot(d, normal) * normal;
            const double energy = energy_of(delta);
            if (energy < best) {
                best = energy;
                out.window = 2 * k + side;
                out.raw = d;
                out.projected = delta;
                out.energy = energy;
                found = true;
            }
        }
    }
    if (!found)
        throw NoCandidate("half_kernel_laplacian: vertex " + std::to_string(v) +
                          ": every candidate energy reached the 1e6 sentinel; normalize the "
                          "mesh scale");
    return out;
}

void check_config(const HloConfig& cfg) {
    if (cfg.iterations < 1) throw std::invalid_argument("HloConfig: iterations must be >= 1");
    if (cfg.step <= 0.0) throw std::invalid_argument("HloConfig: step must be positive");
}

}  // namespace

HloCandidate half_kernel_laplacian(const TriMesh& topology, std::span<const Vec3> positions,
                                   int v, const Vec3& original_position, const HloConfig& cfg,
                                   double epsilon) {
    if (v < 0 || v >= topology.vertex_count())
        throw IndexOutOfRange("half_kernel_laplacian: vertex " + std::to_string(v));
    SplitScratch scratch;
    return select_candidate(topology, positions, v, original_position, cfg, epsilon, scratch);
}

HloCandidate half_kernel_laplacian(const TriMesh& mesh, int v, const Vec3& original_position,
                                   const HloConfig& cfg) {
    return half_kernel_laplacian(mesh, mesh.positions, v, original_position, cfg,
                                 1e-12 * mesh.bbox_diagonal);
}

DenoiseResult denoise(const TriMesh& mesh, const HloConfig& cfg,
                      const IterationCallback& callback) {
    check_config(cfg);
    const int nv = mesh.vertex_count();
    const std::vector<Vec3> original = mesh.positions;  // v^0, captured once
    std::vector<Vec3> current = mesh.positions;

    LaplacianField field;
    field.kind = LaplacianKind::half_kernel;
    field.vectors.resize(nv);
    const FlowConfig step_cfg{cfg.step, 1, cfg.fix_boundaries};

    DenoiseResult result;
    result.trace.reserve(cfg.iterations);
    const int threads = std::max(1, cfg.threads);

    for (int it = 1; it <= cfg.iterations; ++it) {
        const double epsilon = degeneracy_epsilon(current);
        std::vector<std::exception_ptr> errors(threads);
        detail::parallel_for(nv, threads, [&](int tid, int begin, int end) {
            SplitScratch scratch;
            try {
                for (int v = begin; v < end; ++v) {
                    if (cfg.fix_boundaries && mesh.boundary_vertex[v]) {
                        field.vectors[v] = Vec3{};
                        continue;
                    }
                    field.vectors[v] =
                        select_candidate(mesh, current, v, original[v], cfg, epsilon, scratch)
                            .projected;
                }
            } catch (...) {
                errors[tid] = std::current_exception();
            }
        });
        for (const auto& err : errors)
            if (err) std::rethrow_exception(err);

        std::vector<Vec3> next = flow_step(mesh, current, field, step_cfg);

        IterationStats stats;
        stats.iteration = it;
        double disp = 0.0;
        double delta = 0.0;
        for (int v = 0; v < nv; ++v) {
            disp += norm(next[v] - current[v]);
            delta += norm(field.vectors[v]);
        }
        stats.avg_displacement = disp / static_cast<double>(nv);
        stats.total_delta_norm = delta;
        result.trace.push_back(stats);

        current = std::move(next);
        if (callback) callback(it, current);
    }
    result.mesh = with_positions(mesh, std::move(current));
    return result;
}

}  // namespace hlo
