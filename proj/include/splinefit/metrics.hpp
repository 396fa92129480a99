#pragma once

#include <cstdint>

#include "splinefit/nn_index.hpp"
#include "splinefit/point_cloud.hpp"

namespace splinefit {

// One pass of nearest-neighbor lookups from every point of `from` into `to`,
// accumulated in point order. All set-distance metrics below are assembled
// from these two numbers so alternate entry points agree bit for bit.
struct DirectedNnStats {
    double sum_squared = 0.0;
    double max_squared = 0.0;
};

DirectedNnStats directed_nn_stats(const std::vector<Vec3>& from, const NearestNeighborIndex& to);

NearestNeighborIndex build_index(const PointCloud& cloud);

// Sum of squared nearest-neighbor distances from -> to.
double one_sided_chamfer(const PointCloud& from, const NearestNeighborIndex& to);

// Symmetric sum of squared nearest-neighbor distances (a sum, not a mean).
double chamfer_distance(const PointCloud& x, const PointCloud& y);

// max over both directions of the largest nearest-neighbor distance
// (unsquared norms).
double hausdorff_distance(const PointCloud& x, const PointCloud& y);

// chamfer + lambda_hd * hausdorff.
double pso_fitness(const PointCloud& x, const PointCloud& y, double lambda_hd);
double pso_fitness(const std::vector<Vec3>& x, const NearestNeighborIndex& x_index,
                   const std::vector<Vec3>& y, const NearestNeighborIndex& y_index,
                   double lambda_hd);

// 0.5 * (mean nearest distance data->samples + mean nearest distance
// samples->data), in the units of the inputs (mm in the pipeline).
double report_distance_mm(const PointCloud& samples, const PointCloud& data);

// Seeded uniform subsample without replacement, original point order kept.
// Returns the cloud unchanged when it is already small enough.
PointCloud subsample_cloud(const PointCloud& cloud, std::size_t max_points, std::uint64_t seed);

// Cap applied to fitness-evaluation clouds during swarm optimization.
inline constexpr std::size_t kMaxFitnessPoints = 20000;

}  // namespace splinefit
