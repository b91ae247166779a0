#include "hlo/closest_point.hpp"

#include <algorithm>
#include <limits>

#include "hlo/errors.hpp"

namespace hlo {

// Ericson, Real-Time Collision Detection, 5.1.5. Robust for degenerate
// triangles (falls through to the nearest edge or vertex).
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 ap = p - a;
    const double d1 = dot(ab, ap);
    const double d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;

    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp);
    const double d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return b;

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double v = d1 / (d1 - d3);
        return a + v * ab;
    }

    const Vec3 cp = p - c;
    const double d5 = dot(ab, cp);
    const double d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return c;

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double w = d2 / (d2 - d6);
        return a + w * ac;
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && d4 - d3 >= 0.0 && d5 - d6 >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return b + w * (c - b);
    }

    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom;
    const double w = vc * denom;
    return a + v * ab + w * ac;
}

TriangleBvh::TriangleBvh(const TriMesh& mesh) {
    if (mesh.faces.empty()) throw EmptyMesh("TriangleBvh: mesh has no faces");
    const int nf = mesh.face_count();
    triangles_.reserve(nf);
    std::vector<Vec3> centers;
    centers.reserve(nf);
    order_.resize(nf);
    for (int f = 0; f < nf; ++f) {
        const auto& [a, b, c] = mesh.faces[f];
        triangles_.push_back({mesh.positions[a], mesh.positions[b], mesh.positions[c]});
        centers.push_back((mesh.positions[a] + mesh.positions[b] + mesh.positions[c]) / 3.0);
        order_[f] = f;
    }
    nodes_.reserve(2 * nf);
    root_ = build(0, nf, centers);
}

int TriangleBvh::build(int begin, int end, std::vector<Vec3>& centers) {
    Node node;
    node.lo = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
               std::numeric_limits<double>::max()};
    node.hi = {-std::numeric_limits<double>::max(), -std::numeric_limits<double>::max(),
               -std::numeric_limits<double>::max()};
    for (int i = begin; i < end; ++i) {
        for (const Vec3& p : triangles_[order_[i]]) {
            node.lo = {std::min(node.lo.x, p.x), std::min(node.lo.y, p.y),
                       std::min(node.lo.z, p.z)};
            node.hi = {std::max(node.hi.x, p.x), std::max(node.hi.y, p.y),
                       std::max(node.hi.z, p.z)};
        }
    }

    constexpr int kLeafSize = 4;
    if (end - begin <= kLeafSize) {
        node.begin = begin;
        node.count = end - begin;
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size()) - 1;
    }

    Vec3 clo = centers[order_[begin]];
    Vec3 chi = clo;
    for (int i = begin; i < end; ++i) {
        const Vec3& c = centers[order_[i]];
        clo = {std::min(clo.x, c.x), std::min(clo.y, c.y), std::min(clo.z, c.z)};
        chi = {std::max(chi.x, c.x), std::max(chi.y, c.y), std::max(chi.z, c.z)};
    }
    const Vec3 extent = chi - clo;
    int axis = 0;
    if (extent.y > extent.x) axis = 1;
    if (extent.z > extent[axis]) axis = 2;

    const int mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int lhs, int rhs) { return centers[lhs][axis] < centers[rhs][axis]; });

    const int node_index = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    const int left = build(begin, mid, centers);
    const int right = build(mid, end, centers);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
}

double TriangleBvh::box_distance_sq(const Node& node, const Vec3& q) const {
    double d2 = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        const double v = q[axis];
        const double lo = node.lo[axis];
        const double hi = node.hi[axis];
        if (v < lo)
            d2 += (lo - v) * (lo - v);
        else if (v > hi)
            d2 += (v - hi) * (v - hi);
    }
    return d2;
}

TriangleBvh::Hit TriangleBvh::closest(const Vec3& query) const {
    Hit best;
    double best_sq = std::numeric_limits<double>::max();

    // Median splits keep the tree balanced, so depth stays ~log2(n) and the
    // DFS stack never grows past depth + 1.
    int stack[128];
    int top = 0;
    stack[top++] = root_;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (box_distance_sq(node, query) >= best_sq) continue;
        if (node.left < 0) {
            for (int i = node.begin; i < node.begin + node.count; ++i) {
                const int face = order_[i];
                const auto& tri = triangles_[face];
                const Vec3 cp = closest_point_on_triangle(query, tri[0], tri[1], tri[2]);
                const double d2 = squared_norm(query - cp);
                if (d2 < best_sq) {
                    best_sq = d2;
                    best.point = cp;
                    best.face = face;
                }
            }
        } else {
            // Visit the nearer child first for tighter pruning.
            const double dl = box_distance_sq(nodes_[node.left], query);
            const double dr = box_distance_sq(nodes_[node.right], query);
            if (dl <= dr) {
                stack[top++] = node.right;
                stack[top++] = node.left;
            } else {
                stack[top++] = node.left;
                stack[top++] = node.right;
            }
        }
    }
    best.distance = std::sqrt(best_sq);
    return best;
}

}  // namespace hlo
