#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "splinefit/leaf_genome.hpp"
#include "splinefit/nn_index.hpp"
#include "splinefit/nurbs.hpp"
#include "splinefit/point_cloud.hpp"

namespace splinefit {

// Recipe for one synthetic leaf scan. noise_sigma is a fraction of the leaf
// length; the occlusion patch is a random axis-aligned rectangle in (u, v)
// covering occlusion_fraction of the parameter square.
struct SynthSpec {
    LeafGenome genome;
    std::size_t n_points = 2000;     // >= 100
    double noise_sigma = 0.0;        // >= 0
    double occlusion_fraction = 0.0; // [0, 1)
    std::uint64_t seed = 0;
    double scale_mm = 500.0;         // > 0
    double rotation = 0.0;           // radians about the vertical axis
};

struct SyntheticLeaf {
    PointCloud cloud;       // mm frame
    NurbsSurface surface;   // ground truth in the same mm frame
    double leaf_length_mm = 0.0;
};

// Uniform (u, v) samples of the decoded surface, Gaussian noise, occlusion
// deletion, then rotation about the vertical axis and scaling to mm.
// Deterministic for a fixed spec.
SyntheticLeaf generate_leaf(const SynthSpec& spec);

// In-bounds genome with a smooth arc-shaped height profile and leaf-like
// width taper; the kind of shape the fitting pipeline is meant to recover.
LeafGenome random_leaf_genome(Rng& rng);

// Exhaustive nearest-neighbor oracle, lowest index on ties.
std::vector<NearestNeighbor> brute_force_nearest(const std::vector<Vec3>& targets,
                                                 const std::vector<Vec3>& queries);

// Central differences (f(x + h e_i) - f(x - h e_i)) / 2h.
std::vector<double> finite_difference_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& params, double h);

// Distance from a point to the surface: coarse-grid seed refined by
// Gauss-Newton projection in (u, v). Used as the dense-sampling limit when
// checking recovered geometry.
double point_to_surface_distance(const NurbsSurface& surface, const Vec3& point);

}  // namespace splinefit
