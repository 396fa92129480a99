#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "splinefit/geometry.hpp"

namespace splinefit {

struct NearestNeighbor {
    std::size_t index = 0;
    double squared_distance = 0.0;
};

// Exact nearest-neighbor search over a fixed 3D point set. Ties in distance
// resolve to the lowest point index, and construction is deterministic, so
// queries are reproducible run to run.
class NearestNeighborIndex {
public:
    // Throws std::invalid_argument on an empty set.
    explicit NearestNeighborIndex(std::vector<Vec3> points);

    NearestNeighbor query(const Vec3& q) const;

    const std::vector<Vec3>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

private:
    struct Node {
        double split = 0.0;
        int axis = -1;              // -1 marks a leaf
        std::uint32_t left = 0;     // child node ids, or [begin, end) into order_
        std::uint32_t right = 0;
    };

    std::uint32_t build(std::uint32_t begin, std::uint32_t end);
    void search(std::uint32_t node_id, const Vec3& q, NearestNeighbor& best) const;

    std::vector<Vec3> points_;
    std::vector<std::uint32_t> order_;  // point ids grouped by leaf
    std::vector<Node> nodes_;
    std::uint32_t root_ = 0;
};

}  // namespace splinefit
