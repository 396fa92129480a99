#pragma once

#include <optional>
#include <vector>

#include "splinefit/geometry.hpp"

namespace splinefit {

// Millimeter frame -> normalized frame bookkeeping. A normalized cloud is
// recovered as rotate_z(rotation) then * scale then + centroid.
struct NormalizationRecord {
    double scale = 1.0;   // mm per normalized unit
    Vec3 centroid{};      // mm
    double rotation = 0;  // radians about the vertical axis
};

struct PointCloud {
    std::vector<Vec3> points;
    std::optional<NormalizationRecord> normalization;
};

Vec3 centroid(const std::vector<Vec3>& points);

}  // namespace splinefit
