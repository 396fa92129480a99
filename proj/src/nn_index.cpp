#include "splinefit/nn_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace splinefit {

namespace {
constexpr std::uint32_t kLeafSize = 12;

double coord(const Vec3& p, int axis) {
    return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}
}  // namespace

NearestNeighborIndex::NearestNeighborIndex(std::vector<Vec3> points)
    : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("nn index: empty point set");
    order_.resize(points_.size());
    std::iota(order_.begin(), order_.end(), 0u);
    nodes_.reserve(2 * points_.size() / kLeafSize + 2);
    root_ = build(0, static_cast<std::uint32_t>(points_.size()));
}

std::uint32_t NearestNeighborIndex::build(std::uint32_t begin, std::uint32_t end) {
    const std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({});
    if (end - begin <= kLeafSize) {
        nodes_[id] = {0.0, -1, begin, end};
        return id;
    }
    Vec3 lo = points_[order_[begin]];
    Vec3 hi = lo;
    for (std::uint32_t k = begin + 1; k < end; ++k) {
        const Vec3& p = points_[order_[k]];
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    const Vec3 extent = hi - lo;
    int axis = 0;
    if (extent.y > extent.x) axis = 1;
    if (coord(extent, 2) > coord(extent, axis)) axis = 2;

    const std::uint32_t mid = begin + (end - begin) / 2;
    // Ties in the split coordinate break by point index so the layout is the
    // same on every run.
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         const double ca = coord(points_[a], axis);
                         const double cb = coord(points_[b], axis);
                         return ca < cb || (ca == cb && a < b);
                     });
    const double split = coord(points_[order_[mid]], axis);
    const std::uint32_t left = build(begin, mid);
    const std::uint32_t right = build(mid, end);
    nodes_[id] = {split, axis, left, right};
    return id;
}

void NearestNeighborIndex::search(std::uint32_t node_id, const Vec3& q,
                                  NearestNeighbor& best) const {
    const Node& node = nodes_[node_id];
    if (node.axis < 0) {
        for (std::uint32_t k = node.left; k < node.right; ++k) {
            const std::uint32_t idx = order_[k];
            const double d2 = dist2(points_[idx], q);
            if (d2 < best.squared_distance ||
                (d2 == best.squared_distance && idx < best.index)) {
                best.squared_distance = d2;
                best.index = idx;
            }
        }
        return;
    }
    const double delta = coord(q, node.axis) - node.split;
    const std::uint32_t near = delta < 0.0 ? node.left : node.right;
    const std::uint32_t far = delta < 0.0 ? node.right : node.left;
    search(near, q, best);
    // Visit the far side on exact ties too, otherwise a lower-index point at
    // equal distance could be pruned away.
    if (delta * delta <= best.squared_distance) search(far, q, best);
}

NearestNeighbor NearestNeighborIndex::query(const Vec3& q) const {
    NearestNeighbor best;
    best.index = std::numeric_limits<std::size_t>::max();
    best.squared_distance = std::numeric_limits<double>::infinity();
    search(root_, q, best);
    return best;
}

}  // namespace splinefit
