#include "hlo/metrics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "detail/rng.hpp"
#include "hlo/closest_point.hpp"
#include "hlo/errors.hpp"
#include "hlo/laplacian.hpp"

namespace hlo {

namespace {

// Three standard normals from a per-vertex stream (Box-Muller; fully
// specified so results never depend on the platform's distribution).
std::array<double, 3> gaussian3(detail::Stream& stream) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double r0 = std::sqrt(-2.0 * std::log(stream.next_open_unit()));
    const double a0 = two_pi * stream.next_open_unit();
    const double r1 = std::sqrt(-2.0 * std::log(stream.next_open_unit()));
    const double a1 = two_pi * stream.next_open_unit();
    return {r0 * std::cos(a0), r0 * std::sin(a0), r1 * std::cos(a1)};
}

struct RawNormal {
    Vec3 n{};
    bool degenerate = true;
};

RawNormal raw_face_normal(const TriMesh& mesh, int f) {
    const auto& [a, b, c] = mesh.faces[f];
    const Vec3& p0 = mesh.positions[a];
    const Vec3& p1 = mesh.positions[b];
    const Vec3& p2 = mesh.positions[c];
    RawNormal out;
    out.n = cross(p1 - p0, p2 - p0);
    const double longest = std::max({norm(p1 - p0), norm(p2 - p0), norm(p2 - p1)});
    out.degenerate =
        norm(out.n) <= 1e-12 * mesh.bbox_diagonal * longest || squared_norm(out.n) == 0.0;
    return out;
}

double face_area(const TriMesh& mesh, int f) {
    const auto& [a, b, c] = mesh.faces[f];
    return 0.5 * norm(cross(mesh.positions[b] - mesh.positions[a],
                            mesh.positions[c] - mesh.positions[a]));
}

std::string format_double(double v) {
    std::array<char, 64> buf;
    auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 15);
    return std::string(buf.data(), res.ptr);
}

}  // namespace

TriMesh add_noise(const TriMesh& mesh, const NoiseSpec& spec) {
    if (spec.sigma_factor < 0.0)
        throw std::invalid_argument("add_noise: sigma_factor must be >= 0");
    if (spec.sigma_factor == 0.0) return mesh;

    const double sigma = spec.sigma_factor * mean_edge_length(mesh);
    std::vector<Vec3> positions = mesh.positions;

    if (spec.direction == NoiseDirection::isotropic) {
        for (std::size_t v = 0; v < positions.size(); ++v) {
            detail::Stream stream(detail::mix(spec.seed, v));
            const auto g = gaussian3(stream);
            positions[v] += Vec3{sigma * g[0], sigma * g[1], sigma * g[2]};
        }
    } else {
        const std::vector<Vec3> normals = vertex_normals_area_weighted(mesh);
        for (std::size_t v = 0; v < positions.size(); ++v) {
            detail::Stream stream(detail::mix(spec.seed, v));
            const auto g = gaussian3(stream);
            positions[v] += (sigma * g[0]) * normals[v];
        }
    }
    return with_positions(mesh, std::move(positions));
}

double e_v(const TriMesh& denoised, const TriMesh& reference) {
    if (denoised.faces.empty() || reference.faces.empty())
        throw EmptyMesh("e_v: both meshes need faces");

    const int nf = denoised.face_count();
    std::vector<double> areas(nf);
    double total_area = 0.0;
    for (int f = 0; f < nf; ++f) {
        areas[f] = face_area(denoised, f);
        total_area += areas[f];
    }
    if (total_area <= 0.0) throw EmptyMesh("e_v: denoised mesh has zero total area");

    const TriangleBvh bvh(reference);
    double acc = 0.0;
    for (int v = 0; v < denoised.vertex_count(); ++v) {
        double weight = 0.0;
        for (int f : denoised.vertex_faces[v]) weight += areas[f];
        if (weight == 0.0) continue;
        const double dist = bvh.closest(denoised.positions[v]).distance;
        acc += weight * dist * dist;
    }
    return std::sqrt(acc / (3.0 * total_area));
}

MsaeResult msae(const TriMesh& denoised, const TriMesh& reference) {
    if (denoised.face_count() != reference.face_count())
        throw FaceCountMismatch("msae: " + std::to_string(denoised.face_count()) + " vs " +
                                std::to_string(reference.face_count()) + " faces");
    MsaeResult out;
    const int nf = denoised.face_count();
    if (nf == 0) return out;
    double acc = 0.0;
    for (int f = 0; f < nf; ++f) {
        const RawNormal a = raw_face_normal(denoised, f);
        const RawNormal b = raw_face_normal(reference, f);
        if (a.degenerate || b.degenerate) {
            ++out.degenerate_faces;
            continue;
        }
        const double theta = std::atan2(norm(cross(a.n, b.n)), dot(a.n, b.n));
        acc += theta * theta;
    }
    out.value = acc / static_cast<double>(nf);
    return out;
}

FlippedFaces flipped_faces(const TriMesh& mesh, const TriMesh* reference) {
    FlippedFaces out;
    const int nf = mesh.face_count();
    if (reference) {
        if (reference->face_count() != nf)
            throw FaceCountMismatch("flipped_faces: " + std::to_string(nf) + " vs " +
                                    std::to_string(reference->face_count()) + " faces");
        for (int f = 0; f < nf; ++f) {
            const RawNormal a = raw_face_normal(mesh, f);
            const RawNormal b = raw_face_normal(*reference, f);
            if (a.degenerate || b.degenerate) continue;
            if (dot(a.n, b.n) < 0.0) out.faces.push_back(f);
        }
    } else {
        // Edge-adjacency: faces sharing an undirected edge.
        std::unordered_map<std::uint64_t, std::array<int, 2>> edge_faces;
        edge_faces.reserve(nf * 3);
        auto key = [](int a, int b) {
            if (a > b) std::swap(a, b);
            return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
        };
        for (int f = 0; f < nf; ++f) {
            const auto& tri = mesh.faces[f];
            for (int e = 0; e < 3; ++e) {
                auto [it, inserted] = edge_faces.try_emplace(key(tri[e], tri[(e + 1) % 3]),
                                                             std::array<int, 2>{f, -1});
                if (!inserted && it->second[1] < 0 && it->second[0] != f) it->second[1] = f;
            }
        }
        std::vector<Vec3> unit(nf);
        std::vector<bool> ok(nf);
        for (int f = 0; f < nf; ++f) {
            const RawNormal rn = raw_face_normal(mesh, f);
            ok[f] = !rn.degenerate;
            if (ok[f]) unit[f] = normalized(rn.n);
        }
        std::vector<Vec3> nbr_sum(nf);
        for (const auto& [k, pair] : edge_faces) {
            const auto [f0, f1] = pair;
            if (f1 < 0) continue;
            if (ok[f1]) nbr_sum[f0] += unit[f1];
            if (ok[f0]) nbr_sum[f1] += unit[f0];
        }
        for (int f = 0; f < nf; ++f) {
            if (!ok[f]) continue;
            if (dot(unit[f], nbr_sum[f]) < 0.0) out.faces.push_back(f);
        }
        std::sort(out.faces.begin(), out.faces.end());
    }
    out.count = static_cast<int>(out.faces.size());
    return out;
}

VertexErrorResult avg_vertex_error(const TriMesh& denoised, const TriMesh& ground_truth) {
    if (denoised.vertex_count() != ground_truth.vertex_count())
        throw VertexCountMismatch("avg_vertex_error: " + std::to_string(denoised.vertex_count()) +
                                  " vs " + std::to_string(ground_truth.vertex_count()) +
                                  " vertices");
    const int nv = denoised.vertex_count();
    VertexErrorResult out;
    out.signed_field.resize(nv);
    const std::vector<Vec3> gt_normals = vertex_normals_area_weighted(ground_truth);
    double acc = 0.0;
    for (int v = 0; v < nv; ++v) {
        const Vec3 diff = denoised.positions[v] - ground_truth.positions[v];
        acc += norm(diff);
        out.signed_field[v] = dot(diff, gt_normals[v]);
    }
    out.average = nv > 0 ? acc / static_cast<double>(nv) : 0.0;
    return out;
}

double mean_curvature_energy(const TriMesh& mesh) {
    const LaplacianField field = cotangent_laplacian(mesh);
    double acc = 0.0;
    // Open-boundary rows carry one-sided stiffness (boundary flux, not
    // curvature): a flat grid would otherwise score nonzero.
    for (int v = 0; v < mesh.vertex_count(); ++v)
        if (!mesh.boundary_vertex[v]) acc += norm(field.vectors[v]);
    return acc;
}

double enclosed_volume(const TriMesh& mesh) {
    for (std::uint8_t b : mesh.boundary_vertex)
        if (b) throw OpenMesh("enclosed_volume: mesh has open boundaries");
    double vol = 0.0;
    for (const auto& [a, b, c] : mesh.faces)
        vol += dot(mesh.positions[a], cross(mesh.positions[b], mesh.positions[c]));
    return vol / 6.0;
}

std::string QualityReport::csv_header() {
    return "e_v,msae,avg_vertex_error,mean_curvature_energy,flipped_faces,enclosed_volume,"
           "runtime_seconds";
}

std::string QualityReport::csv_row() const {
    std::ostringstream os;
    os << format_double(e_v) << ',' << format_double(msae) << ','
       << format_double(avg_vertex_error) << ',' << format_double(mean_curvature_energy) << ','
       << flipped_faces << ',' << format_double(enclosed_volume) << ','
       << format_double(runtime_seconds);
    return os.str();
}

std::string QualityReport::pretty() const {
    std::ostringstream os;
    os << "E_v:                   " << format_double(e_v) << '\n'
       << "MSAE (rad^2):          " << format_double(msae) << '\n'
       << "avg vertex error:      " << format_double(avg_vertex_error) << '\n'
       << "mean curvature energy: " << format_double(mean_curvature_energy) << '\n'
       << "flipped faces:         " << flipped_faces << '\n'
       << "enclosed volume:       " << format_double(enclosed_volume) << '\n'
       << "runtime (s):           " << format_double(runtime_seconds) << '\n';
    return os.str();
}

QualityReport evaluate_quality(const TriMesh& denoised, const TriMesh& ground_truth,
                               double runtime_seconds) {
    QualityReport report;
    report.e_v = e_v(denoised, ground_truth);
    report.msae = msae(denoised, ground_truth).value;
    report.avg_vertex_error = avg_vertex_error(denoised, ground_truth).average;
    report.mean_curvature_energy = mean_curvature_energy(denoised);
    report.flipped_faces = flipped_faces(denoised, &ground_truth).count;
    try {
        report.enclosed_volume = enclosed_volume(denoised);
    } catch (const OpenMesh&) {
        report.enclosed_volume = 0.0;
    }
    report.runtime_seconds = runtime_seconds;
    return report;
}

}  // namespace hlo
