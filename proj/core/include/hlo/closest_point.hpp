#pragma once

#include <vector>

#include "hlo/mesh.hpp"

namespace hlo {

/// Exact closest point to p on triangle (a, b, c).
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

/// Static AABB tree over a mesh's triangles for exact closest-point
/// queries. Queries are const and thread-safe.
class TriangleBvh {
  public:
    explicit TriangleBvh(const TriMesh& mesh);

    struct Hit {
        double distance = 0.0;
        Vec3 point{};
        int face = -1;
    };

    Hit closest(const Vec3& query) const;

  private:
    struct Node {
        Vec3 lo{}, hi{};
        int left = -1;   // internal node children; -1 marks a leaf
        int right = -1;
        int begin = 0;   // leaf triangle range in order_
        int count = 0;
    };

    int build(int begin, int end, std::vector<Vec3>& centers);
    double box_distance_sq(const Node& node, const Vec3& q) const;

    std::vector<Node> nodes_;
    std::vector<int> order_;
    std::vector<std::array<Vec3, 3>> triangles_;
    int root_ = -1;
};

}  // namespace hlo
