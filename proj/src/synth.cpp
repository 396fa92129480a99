#include "splinefit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "splinefit/rng.hpp"

namespace splinefit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

struct LocalFrame {
    Vec3 position;
    Vec3 du;
    Vec3 dv;
};

// Rational first derivatives via the quotient rule.
LocalFrame surface_frame(const NurbsSurface& s, double u, double v) {
    const auto bu = basis_derivatives(s.knots_u, s.degrees.p, u, 1);
    const auto bv = basis_derivatives(s.knots_v, s.degrees.q, v, 1);
    Vec3 a{}, a_u{}, a_v{};
    double w = 0.0, w_u = 0.0, w_v = 0.0;
    for (std::size_t i = 0; i < s.grid.rows; ++i) {
        for (std::size_t j = 0; j < s.grid.cols; ++j) {
            const double wt = s.grid.weight(i, j);
            const Vec3& p = s.grid.at(i, j);
            const double b0 = bu[0][j] * bv[0][i] * wt;
            const double b_u = bu[1][j] * bv[0][i] * wt;
            const double b_v = bu[0][j] * bv[1][i] * wt;
            a += b0 * p;
            a_u += b_u * p;
            a_v += b_v * p;
            w += b0;
            w_u += b_u;
            w_v += b_v;
        }
    }
    LocalFrame f;
    f.position = (1.0 / w) * a;
    f.du = (1.0 / w) * (a_u - w_u * f.position);
    f.dv = (1.0 / w) * (a_v - w_v * f.position);
    return f;
}

}  // namespace

SyntheticLeaf generate_leaf(const SynthSpec& spec) {
    if (spec.n_points < 100) {
        throw std::invalid_argument("generate_leaf: need at least 100 points");
    }
    if (!(spec.occlusion_fraction >= 0.0 && spec.occlusion_fraction < 1.0)) {
        throw std::invalid_argument("generate_leaf: occlusion_fraction outside [0, 1)");
    }
    if (!(spec.scale_mm > 0.0)) throw std::invalid_argument("generate_leaf: scale_mm must be > 0");
    if (!(spec.noise_sigma >= 0.0)) {
        throw std::invalid_argument("generate_leaf: noise_sigma must be >= 0");
    }

    const NurbsSurface canonical = surface_from_genome(spec.genome);
    double min_x = canonical.grid.points.front().x;
    double max_x = min_x;
    for (const Vec3& p : canonical.grid.points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
    }
    const double length = max_x - min_x;

    Rng rng(spec.seed);
    double u0 = 2.0, u1 = 2.0, v0 = 2.0, v1 = 2.0;  // empty occlusion window
    if (spec.occlusion_fraction > 0.0) {
        const double width_u = rng.uniform(spec.occlusion_fraction, 1.0);
        const double width_v = spec.occlusion_fraction / width_u;
        u0 = rng.uniform(0.0, 1.0 - width_u);
        v0 = rng.uniform(0.0, 1.0 - width_v);
        u1 = u0 + width_u;
        v1 = v0 + width_v;
    }

    SyntheticLeaf out;
    out.cloud.points.reserve(spec.n_points);
    const double sigma = spec.noise_sigma * length;
    for (std::size_t k = 0; k < spec.n_points; ++k) {
        const double u = rng.uniform01();
        const double v = rng.uniform01();
        if (u >= u0 && u <= u1 && v >= v0 && v <= v1) continue;
        Vec3 p = evaluate_surface(canonical, u, v);
        if (sigma > 0.0) {
            p += Vec3{sigma * rng.normal(), sigma * rng.normal(), sigma * rng.normal()};
        }
        out.cloud.points.push_back(spec.scale_mm * rotate_z(p, spec.rotation));
    }

    out.surface = canonical;
    for (Vec3& p : out.surface.grid.points) p = spec.scale_mm * rotate_z(p, spec.rotation);
    out.leaf_length_mm = length * spec.scale_mm;
    return out;
}

LeafGenome random_leaf_genome(Rng& rng) {
    LeafGenome g;
    for (auto& v : g.x_raw) v = rng.uniform(0.3, 1.1);

    const double sweep = rng.uniform(-0.07, 0.07);
    for (std::size_t j = 0; j < 6; ++j) {
        const double t = static_cast<double>(j) / 5.0;
        g.y_mid[j] = std::min(0.1, std::max(-0.1, sweep * t * t + rng.uniform(-0.015, 0.015)));
    }

    const double bulge = rng.uniform(0.09, 0.19);
    g.dy[0] = rng.uniform(0.01, 0.09);
    g.dy[5] = rng.uniform(0.01, 0.09);
    for (std::size_t j = 1; j <= 4; ++j) {
        const double t = static_cast<double>(j) / 5.0;
        const double base = 0.05 + (bulge - 0.05) * std::sin(kPi * t);
        g.dy[j] = std::min(0.2, std::max(0.05, base + rng.uniform(-0.005, 0.005)));
    }

    // Arc-shaped height profile: rise to a peak, then droop toward the tip.
    const double base_z = rng.uniform(0.02, 0.2);
    const double peak = rng.uniform(base_z + 0.15, 0.85);
    const double peak_t = rng.uniform(0.35, 0.65);
    const double tip = rng.uniform(std::max(0.0, peak - 0.6), peak - 0.1);
    auto profile = [&](double t) {
        if (t <= peak_t) return base_z + (peak - base_z) * std::sin(kPi / 2.0 * t / peak_t);
        const double s = (t - peak_t) / (1.0 - peak_t);
        return peak - (peak - tip) * s * s;
    };
    double cols[6];
    for (std::size_t j = 0; j < 6; ++j) cols[j] = profile(static_cast<double>(j) / 5.0);
    g.z[0] = clamp01(cols[0]);
    g.z[5] = clamp01(cols[5]);
    for (std::size_t j = 1; j <= 4; ++j) {
        g.z[j] = clamp01(cols[j] + rng.uniform(-0.03, 0.03));       // bottom row
        g.z[5 + j] = clamp01(cols[j] + rng.uniform(-0.03, 0.03));   // middle row
        g.z[9 + j] = clamp01(cols[j] + rng.uniform(-0.03, 0.03));   // top row
    }
    return g;
}

std::vector<NearestNeighbor> brute_force_nearest(const std::vector<Vec3>& targets,
                                                 const std::vector<Vec3>& queries) {
    if (targets.empty()) throw std::invalid_argument("brute_force_nearest: empty target set");
    std::vector<NearestNeighbor> out;
    out.reserve(queries.size());
    for (const Vec3& q : queries) {
        NearestNeighbor best;
        best.index = 0;
        best.squared_distance = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const double d2 = dist2(targets[i], q);
            if (d2 < best.squared_distance) {
                best.squared_distance = d2;
                best.index = i;
            }
        }
        out.push_back(best);
    }
    return out;
}

std::vector<double> finite_difference_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& params, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("finite_difference_gradient: h must be > 0");
    std::vector<double> grad(params.size());
    std::vector<double> x = params;
    for (std::size_t i = 0; i < params.size(); ++i) {
        x[i] = params[i] + h;
        const double hi = f(x);
        x[i] = params[i] - h;
        const double lo = f(x);
        x[i] = params[i];
        grad[i] = (hi - lo) / (2.0 * h);
    }
    return grad;
}

double point_to_surface_distance(const NurbsSurface& surface, const Vec3& point) {
    const auto coarse = evaluate_grid(surface, 48, 12);
    std::size_t seed_idx = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < coarse.positions.size(); ++k) {
        const double d2 = dist2(coarse.positions[k], point);
        if (d2 < best_d2) {
            best_d2 = d2;
            seed_idx = k;
        }
    }
    double u = coarse.params[seed_idx][0];
    double v = coarse.params[seed_idx][1];

    double best = std::sqrt(best_d2);
    for (int iter = 0; iter < 40; ++iter) {
        const LocalFrame f = surface_frame(surface, u, v);
        const Vec3 r = f.position - point;
        best = std::min(best, norm(r));

        // Gauss-Newton step on ||S(u,v) - point||^2, damped for stability.
        const double a = dot(f.du, f.du) + 1e-12;
        const double b = dot(f.du, f.dv);
        const double c = dot(f.dv, f.dv) + 1e-12;
        const double g0 = dot(r, f.du);
        const double g1 = dot(r, f.dv);
        const double det = a * c - b * b;
        if (det <= 0.0) break;
        const double step_u = (c * g0 - b * g1) / det;
        const double step_v = (a * g1 - b * g0) / det;
        u = std::min(1.0, std::max(0.0, u - step_u));
        v = std::min(1.0, std::max(0.0, v - step_v));
        if (std::abs(step_u) + std::abs(step_v) < 1e-15) break;
    }
    const LocalFrame f = surface_frame(surface, u, v);
    return std::min(best, norm(f.position - point));
}

}  // namespace splinefit
