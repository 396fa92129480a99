#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "splinefit/nurbs.hpp"
#include "splinefit/point_cloud.hpp"

namespace splinefit {

// Bounded shape parameters of one leaf. Flattened order is x_raw, y_mid, dy,
// z, then rotation when present (32 or 33 values).
struct LeafGenome {
    std::array<double, 6> x_raw{};   // per-column length increments
    std::array<double, 6> y_mid{};   // middle-row lateral offsets
    std::array<double, 6> dy{};      // half widths per column
    std::array<double, 14> z{};      // heights, see decode_genome for layout
    std::optional<double> rotation;  // radians about the vertical axis

    static constexpr std::size_t kShapeSize = 32;

    std::vector<double> to_vector() const;
    static LeafGenome from_vector(const std::vector<double>& values);
};

// Per-slot box bounds aligned with the flattened genome layout.
struct ParamBounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t size() const { return lower.size(); }
    bool contains(const std::vector<double>& values, double slack = 0.0) const;
    void validate() const;  // throws std::invalid_argument on a malformed box
};

// Default leaf box: x_raw in [0.2, 1.2]; y_mid in [-0.1, 0.1]; dy ends in
// [0, 0.1] and interior in [0.05, 0.2]; z in [0, 1]; rotation in [-pi, pi].
ParamBounds leaf_bounds(bool with_rotation);

// Divisor that maps the cumulative sum of x_raw to leaf-length units: 6
// increments at the bounds midpoint 0.7 give total length exactly 1.
inline constexpr double kLengthRescale = 4.2;

// 3x6 control net from a genome, unit weights:
//   x: cumulative sum of x_raw / kLengthRescale, shared by all rows
//   y: row 0 = y_mid + dy, row 1 = y_mid, row 2 = y_mid - dy
//   z: columns 0 and 5 share z[0] and z[5] across rows; interior columns 1-4
//      take z[10..13] on row 0, z[6..9] on row 1, z[1..4] on row 2
// Throws std::invalid_argument when the genome leaves `bounds`.
ControlGrid decode_genome(const LeafGenome& genome);
ControlGrid decode_genome(const LeafGenome& genome, const ParamBounds& bounds);

// Decoded grid wrapped as the standard leaf surface: degree 3 along the
// 6-column length, degree 2 across the 3-row width, clamped uniform knots.
NurbsSurface surface_from_genome(const LeafGenome& genome);
NurbsSurface make_leaf_surface(ControlGrid grid);

// Translates the centroid to the origin and divides by the largest |x|.
// Throws std::invalid_argument when that extent is zero (degenerate cloud).
std::pair<PointCloud, NormalizationRecord> normalize_cloud(const PointCloud& raw);

// Inverse of normalize_cloud plus the stored rotation: rotate about the
// vertical axis, scale, then translate.
NurbsSurface denormalize_surface(const NurbsSurface& surface, const NormalizationRecord& record);
PointCloud denormalize_cloud(const PointCloud& cloud, const NormalizationRecord& record);

// Rotation about the vertical axis through the cloud centroid.
PointCloud apply_rotation(const PointCloud& cloud, double angle);

}  // namespace splinefit
