#include "hlo/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hlo/errors.hpp"

namespace hlo {

namespace {

constexpr double kCotClamp = 1e4;

void check_flow_config(const FlowConfig& cfg) {
    if (cfg.step <= 0.0) throw std::invalid_argument("FlowConfig: step must be positive");
    if (cfg.iterations < 1) throw std::invalid_argument("FlowConfig: iterations must be >= 1");
}

double cot_at(const Vec3& apex, const Vec3& a, const Vec3& b) {
    const Vec3 u = a - apex;
    const Vec3 v = b - apex;
    const double sin_len = norm(cross(u, v));
    if (sin_len == 0.0) return 0.0;
    return dot(u, v) / sin_len;
}

}  // namespace

LaplacianField uniform_laplacian(const TriMesh& topology, std::span<const Vec3> positions) {
    LaplacianField field;
    field.kind = LaplacianKind::uniform;
    field.vectors.resize(positions.size());
    for (int v = 0; v < topology.vertex_count(); ++v) {
        const auto& ring = topology.vertex_neighbors[v];
        if (ring.empty())
            throw IsolatedVertex("uniform_laplacian: vertex " + std::to_string(v) +
                                 " has no neighbors");
        Vec3 sum{};
        for (int n : ring) sum += positions[n];
        field.vectors[v] = positions[v] - sum / static_cast<double>(ring.size());
    }
    return field;
}

LaplacianField uniform_laplacian(const TriMesh& mesh) {
    return uniform_laplacian(mesh, mesh.positions);
}

LaplacianField cotangent_laplacian(const TriMesh& topology, std::span<const Vec3> positions) {
    const int nv = topology.vertex_count();
    for (int v = 0; v < nv; ++v)
        if (topology.vertex_neighbors[v].empty())
            throw IsolatedVertex("cotangent_laplacian: vertex " + std::to_string(v) +
                                 " has no neighbors");

    // Accumulate w_ik = sum of cot(opposite angle) / 2 over the 1-2 faces
    // sharing edge (i,k), then clamp and normalize per vertex.
    std::vector<std::vector<std::pair<int, double>>> weights(nv);
    for (int v = 0; v < nv; ++v) {
        weights[v].reserve(topology.vertex_neighbors[v].size());
        for (int n : topology.vertex_neighbors[v]) weights[v].push_back({n, 0.0});
    }
    auto add_weight = [&](int i, int k, double w) {
        auto& row = weights[i];
        auto it = std::lower_bound(row.begin(), row.end(), k,
                                   [](const auto& p, int key) { return p.first < key; });
        it->second += w;
    };
    for (const auto& [a, b, c] : topology.faces) {
        const double cot_a = cot_at(positions[a], positions[b], positions[c]);
        const double cot_b = cot_at(positions[b], positions[a], positions[c]);
        const double cot_c = cot_at(positions[c], positions[a], positions[b]);
        add_weight(b, c, 0.5 * cot_a);
        add_weight(c, b, 0.5 * cot_a);
        add_weight(a, c, 0.5 * cot_b);
        add_weight(c, a, 0.5 * cot_b);
        add_weight(a, b, 0.5 * cot_c);
        add_weight(b, a, 0.5 * cot_c);
    }

    LaplacianField field;
    field.kind = LaplacianKind::cotangent;
    field.vectors.resize(nv);
    for (int v = 0; v < nv; ++v) {
        double total = 0.0;
        Vec3 acc{};
        for (auto& [n, w] : weights[v]) {
            const double clamped = std::clamp(w, 0.0, kCotClamp);
            total += clamped;
            acc += clamped * (positions[v] - positions[n]);
        }
        field.vectors[v] = total > 0.0 ? acc / total : Vec3{};
    }
    return field;
}

LaplacianField cotangent_laplacian(const TriMesh& mesh) {
    return cotangent_laplacian(mesh, mesh.positions);
}

std::vector<Vec3> flow_step(const TriMesh& topology, std::span<const Vec3> positions,
                            const LaplacianField& field, const FlowConfig& cfg) {
    if (cfg.step <= 0.0) throw std::invalid_argument("FlowConfig: step must be positive");
    if (positions.size() != topology.positions.size() ||
        field.vectors.size() != positions.size())
        throw LengthMismatch("flow_step: positions/field size mismatch");

    std::vector<Vec3> next(positions.begin(), positions.end());
    for (std::size_t v = 0; v < next.size(); ++v) {
        if (cfg.fix_boundaries && topology.boundary_vertex[v]) continue;
        next[v] = positions[v] - cfg.step * field.vectors[v];
    }
    return next;
}

SmoothResult smooth_iterations(const TriMesh& mesh, LaplacianKind kind, const FlowConfig& cfg,
                               const IterationCallback& callback) {
    check_flow_config(cfg);
    if (kind == LaplacianKind::half_kernel)
        throw std::invalid_argument("smooth_iterations: use denoise() for the half-kernel flow");

    std::vector<Vec3> current = mesh.positions;
    SmoothResult result;
    result.trace.reserve(cfg.iterations);
    for (int it = 1; it <= cfg.iterations; ++it) {
        const LaplacianField field = kind == LaplacianKind::uniform
                                         ? uniform_laplacian(mesh, current)
                                         : cotangent_laplacian(mesh, current);
        std::vector<Vec3> next = flow_step(mesh, current, field, cfg);

        IterationStats stats;
        stats.iteration = it;
        double disp = 0.0;
        double delta = 0.0;
        for (std::size_t v = 0; v < next.size(); ++v) {
            disp += norm(next[v] - current[v]);
            if (!(cfg.fix_boundaries && mesh.boundary_vertex[v])) delta += norm(field.vectors[v]);
        }
        stats.avg_displacement = disp / static_cast<double>(next.size());
        stats.total_delta_norm = delta;
        result.trace.push_back(stats);

        current = std::move(next);
        if (callback) callback(it, current);
    }
    result.mesh = with_positions(mesh, std::move(current));
    return result;
}

}  // namespace hlo
