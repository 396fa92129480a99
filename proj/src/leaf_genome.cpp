#include "splinefit/leaf_genome.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "splinefit/metrics.hpp"

namespace splinefit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<double> LeafGenome::to_vector() const {
    std::vector<double> out;
    out.reserve(kShapeSize + (rotation ? 1 : 0));
    out.insert(out.end(), x_raw.begin(), x_raw.end());
    out.insert(out.end(), y_mid.begin(), y_mid.end());
    out.insert(out.end(), dy.begin(), dy.end());
    out.insert(out.end(), z.begin(), z.end());
    if (rotation) out.push_back(*rotation);
    return out;
}

LeafGenome LeafGenome::from_vector(const std::vector<double>& values) {
    if (values.size() != kShapeSize && values.size() != kShapeSize + 1) {
        throw std::invalid_argument("genome: expected 32 or 33 values, got " +
                                    std::to_string(values.size()));
    }
    LeafGenome g;
    std::size_t k = 0;
    for (auto& v : g.x_raw) v = values[k++];
    for (auto& v : g.y_mid) v = values[k++];
    for (auto& v : g.dy) v = values[k++];
    for (auto& v : g.z) v = values[k++];
    if (values.size() == kShapeSize + 1) g.rotation = values[k];
    return g;
}

bool ParamBounds::contains(const std::vector<double>& values, double slack) const {
    if (values.size() != lower.size()) return false;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < lower[i] - slack || values[i] > upper[i] + slack) return false;
    }
    return true;
}

void ParamBounds::validate() const {
    if (lower.size() != upper.size() || lower.empty()) {
        throw std::invalid_argument("bounds: lower/upper size mismatch");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!(lower[i] <= upper[i])) {
            throw std::invalid_argument("bounds: lower > upper at slot " + std::to_string(i));
        }
    }
}

ParamBounds leaf_bounds(bool with_rotation) {
    ParamBounds b;
    auto push = [&](double lo, double hi, int count) {
        for (int i = 0; i < count; ++i) {
            b.lower.push_back(lo);
            b.upper.push_back(hi);
        }
    };
    push(0.2, 1.2, 6);    // x_raw
    push(-0.1, 0.1, 6);   // y_mid
    push(0.0, 0.1, 1);    // dy at the base column
    push(0.05, 0.2, 4);   // dy interior
    push(0.0, 0.1, 1);    // dy at the tip column
    push(0.0, 1.0, 14);   // z
    if (with_rotation) push(-kPi, kPi, 1);
    return b;
}

ControlGrid decode_genome(const LeafGenome& genome) {
    return decode_genome(genome, leaf_bounds(genome.rotation.has_value()));
}

ControlGrid decode_genome(const LeafGenome& genome, const ParamBounds& bounds) {
    bounds.validate();
    const auto values = genome.to_vector();
    if (!bounds.contains(values)) {
        throw std::invalid_argument("genome: value outside bounds");
    }

    ControlGrid grid = make_control_grid(3, 6);
    double cumulative = 0.0;
    for (std::size_t j = 0; j < 6; ++j) {
        cumulative += genome.x_raw[j];
        const double x = cumulative / kLengthRescale;
        const double y = genome.y_mid[j];
        const double d = genome.dy[j];
        grid.at(0, j) = {x, y + d, 0.0};
        grid.at(1, j) = {x, y, 0.0};
        grid.at(2, j) = {x, y - d, 0.0};
    }
    for (std::size_t i = 0; i < 3; ++i) {
        grid.at(i, 0).z = genome.z[0];
        grid.at(i, 5).z = genome.z[5];
    }
    for (std::size_t j = 1; j <= 4; ++j) {
        grid.at(0, j).z = genome.z[9 + j];   // z[10..13]
        grid.at(1, j).z = genome.z[5 + j];   // z[6..9]
        grid.at(2, j).z = genome.z[j];       // z[1..4]
    }
    return grid;
}

NurbsSurface make_leaf_surface(ControlGrid grid) {
    NurbsSurface s;
    s.grid = std::move(grid);
    s.degrees = {3, 2};
    s.knots_u = clamped_uniform_knots(s.grid.cols, s.degrees.p);
    s.knots_v = clamped_uniform_knots(s.grid.rows, s.degrees.q);
    validate_surface(s);
    return s;
}

NurbsSurface surface_from_genome(const LeafGenome& genome) {
    return make_leaf_surface(decode_genome(genome));
}

std::pair<PointCloud, NormalizationRecord> normalize_cloud(const PointCloud& raw) {
    if (raw.points.empty()) throw std::invalid_argument("normalize_cloud: empty cloud");
    NormalizationRecord record;
    record.centroid = centroid(raw.points);
    double max_abs_x = 0.0;
    for (const Vec3& p : raw.points) {
        max_abs_x = std::max(max_abs_x, std::abs(p.x - record.centroid.x));
    }
    if (!(max_abs_x > 0.0)) {
        throw std::invalid_argument("normalize_cloud: degenerate cloud with zero x extent");
    }
    record.scale = max_abs_x;
    record.rotation = 0.0;

    PointCloud out;
    out.points.reserve(raw.points.size());
    const double inv = 1.0 / record.scale;
    for (const Vec3& p : raw.points) out.points.push_back(inv * (p - record.centroid));
    out.normalization = record;
    return {std::move(out), record};
}

NurbsSurface denormalize_surface(const NurbsSurface& surface, const NormalizationRecord& record) {
    NurbsSurface out = surface;
    for (Vec3& p : out.grid.points) {
        p = record.scale * rotate_z(p, record.rotation) + record.centroid;
    }
    return out;
}

PointCloud denormalize_cloud(const PointCloud& cloud, const NormalizationRecord& record) {
    PointCloud out;
    out.points.reserve(cloud.points.size());
    for (const Vec3& p : cloud.points) {
        out.points.push_back(record.scale * rotate_z(p, record.rotation) + record.centroid);
    }
    return out;
}

PointCloud apply_rotation(const PointCloud& cloud, double angle) {
    if (cloud.points.empty()) throw std::invalid_argument("apply_rotation: empty cloud");
    const Vec3 c = centroid(cloud.points);
    PointCloud out;
    out.normalization = cloud.normalization;
    out.points.reserve(cloud.points.size());
    for (const Vec3& p : cloud.points) out.points.push_back(c + rotate_z(p - c, angle));
    return out;
}

}  // namespace splinefit
