#include "splinefit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "splinefit/rng.hpp"

namespace splinefit {

namespace {
void require_nonempty(const PointCloud& cloud, const char* what) {
    if (cloud.points.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty point cloud");
    }
}
}  // namespace

Vec3 centroid(const std::vector<Vec3>& points) {
    Vec3 sum{};
    for (const Vec3& p : points) sum += p;
    return (1.0 / static_cast<double>(points.size())) * sum;
}

DirectedNnStats directed_nn_stats(const std::vector<Vec3>& from, const NearestNeighborIndex& to) {
    DirectedNnStats stats;
    for (const Vec3& p : from) {
        const double d2 = to.query(p).squared_distance;
        stats.sum_squared += d2;
        stats.max_squared = std::max(stats.max_squared, d2);
    }
    return stats;
}

NearestNeighborIndex build_index(const PointCloud& cloud) {
    require_nonempty(cloud, "build_index");
    return NearestNeighborIndex(cloud.points);
}

double one_sided_chamfer(const PointCloud& from, const NearestNeighborIndex& to) {
    require_nonempty(from, "one_sided_chamfer");
    return directed_nn_stats(from.points, to).sum_squared;
}

double chamfer_distance(const PointCloud& x, const PointCloud& y) {
    require_nonempty(x, "chamfer_distance");
    require_nonempty(y, "chamfer_distance");
    const NearestNeighborIndex ix(x.points);
    const NearestNeighborIndex iy(y.points);
    const DirectedNnStats a = directed_nn_stats(x.points, iy);
    const DirectedNnStats b = directed_nn_stats(y.points, ix);
    return a.sum_squared + b.sum_squared;
}

double hausdorff_distance(const PointCloud& x, const PointCloud& y) {
    require_nonempty(x, "hausdorff_distance");
    require_nonempty(y, "hausdorff_distance");
    const NearestNeighborIndex ix(x.points);
    const NearestNeighborIndex iy(y.points);
    const DirectedNnStats a = directed_nn_stats(x.points, iy);
    const DirectedNnStats b = directed_nn_stats(y.points, ix);
    return std::sqrt(std::max(a.max_squared, b.max_squared));
}

double pso_fitness(const std::vector<Vec3>& x, const NearestNeighborIndex& x_index,
                   const std::vector<Vec3>& y, const NearestNeighborIndex& y_index,
                   double lambda_hd) {
    const DirectedNnStats a = directed_nn_stats(x, y_index);
    const DirectedNnStats b = directed_nn_stats(y, x_index);
    const double chamfer = a.sum_squared + b.sum_squared;
    const double hausdorff = std::sqrt(std::max(a.max_squared, b.max_squared));
    return chamfer + lambda_hd * hausdorff;
}

double pso_fitness(const PointCloud& x, const PointCloud& y, double lambda_hd) {
    require_nonempty(x, "pso_fitness");
    require_nonempty(y, "pso_fitness");
    const NearestNeighborIndex ix(x.points);
    const NearestNeighborIndex iy(y.points);
    return pso_fitness(x.points, ix, y.points, iy, lambda_hd);
}

double report_distance_mm(const PointCloud& samples, const PointCloud& data) {
    require_nonempty(samples, "report_distance_mm");
    require_nonempty(data, "report_distance_mm");
    const NearestNeighborIndex is(samples.points);
    const NearestNeighborIndex id(data.points);
    double sum_data = 0.0;
    for (const Vec3& p : data.points) sum_data += std::sqrt(is.query(p).squared_distance);
    double sum_samples = 0.0;
    for (const Vec3& p : samples.points) sum_samples += std::sqrt(id.query(p).squared_distance);
    const double mean_data = sum_data / static_cast<double>(data.points.size());
    const double mean_samples = sum_samples / static_cast<double>(samples.points.size());
    return 0.5 * (mean_data + mean_samples);
}

PointCloud subsample_cloud(const PointCloud& cloud, std::size_t max_points, std::uint64_t seed) {
    require_nonempty(cloud, "subsample_cloud");
    if (max_points == 0) throw std::invalid_argument("subsample_cloud: max_points must be > 0");
    if (cloud.points.size() <= max_points) return cloud;

    // Partial Fisher-Yates over point ids; chosen ids are then restored to
    // ascending order so the result keeps the original point ordering.
    Rng rng(seed);
    std::vector<std::uint32_t> ids(cloud.points.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < max_points; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.index(ids.size() - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(max_points);
    std::sort(ids.begin(), ids.end());

    PointCloud out;
    out.normalization = cloud.normalization;
    out.points.reserve(max_points);
    for (std::uint32_t id : ids) out.points.push_back(cloud.points[id]);
    return out;
}

}  // namespace splinefit
