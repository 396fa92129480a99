#include "splinefit/nurbs.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace splinefit {

namespace {

constexpr double kEndEps = 1e-9;  // one-sided limit offset for second derivatives

// Dense Cox-de Boor triangle: level d holds N_i,d(u) for every i.
// Level 0 is the span indicator; the last nonempty span is treated as closed
// so u = 1 belongs to it. Zero-length spans contribute 0/0 -> 0.
std::vector<std::vector<double>> basis_table(const std::vector<double>& k, int degree, double u) {
    const std::size_t m = k.size();
    std::vector<std::vector<double>> table(static_cast<std::size_t>(degree) + 1);
    auto& level0 = table[0];
    level0.assign(m - 1, 0.0);
    const double back = k.back();
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if ((u >= k[i] && u < k[i + 1]) ||
            (u == back && k[i] < k[i + 1] && k[i + 1] == back)) {
            level0[i] = 1.0;
        }
    }
    for (int d = 1; d <= degree; ++d) {
        const auto& prev = table[d - 1];
        auto& cur = table[d];
        cur.assign(m - static_cast<std::size_t>(d) - 1, 0.0);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            double value = 0.0;
            const double den_l = k[i + d] - k[i];
            if (den_l > 0.0) value += (u - k[i]) / den_l * prev[i];
            const double den_r = k[i + d + 1] - k[i + 1];
            if (den_r > 0.0) value += (k[i + d + 1] - u) / den_r * prev[i + 1];
            cur[i] = value;
        }
    }
    return table;
}

// r-th derivative of the degree-d functions, from the table of plain values.
std::vector<double> derivative_level(const std::vector<std::vector<double>>& table,
                                     const std::vector<double>& k, int r, int d) {
    const std::size_t count = k.size() - static_cast<std::size_t>(d) - 1;
    if (r == 0) return table[static_cast<std::size_t>(d)];
    std::vector<double> out(count, 0.0);
    if (d == 0) return out;
    const std::vector<double> lower = derivative_level(table, k, r - 1, d - 1);
    for (std::size_t i = 0; i < count; ++i) {
        double value = 0.0;
        const double den_l = k[i + d] - k[i];
        if (den_l > 0.0) value += lower[i] / den_l;
        const double den_r = k[i + d + 1] - k[i + 1];
        if (den_r > 0.0) value -= lower[i + 1] / den_r;
        out[i] = d * value;
    }
    return out;
}

void check_basis_inputs(const KnotVector& knots, int degree, double u) {
    if (degree < 0) throw std::invalid_argument("basis: degree must be >= 0");
    if (knots.values.size() < static_cast<std::size_t>(degree) + 2) {
        throw std::invalid_argument("basis: need at least degree + 2 knots, got " +
                                    std::to_string(knots.values.size()));
    }
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::domain_error("basis: parameter " + std::to_string(u) + " outside [0, 1]");
    }
}

double clamp_param(double t) {
    return std::min(1.0 - kEndEps, std::max(kEndEps, t));
}

}  // namespace

ControlGrid make_control_grid(std::size_t rows, std::size_t cols) {
    ControlGrid grid;
    grid.rows = rows;
    grid.cols = cols;
    grid.points.assign(rows * cols, Vec3{});
    grid.weights.assign(rows * cols, 1.0);
    return grid;
}

KnotVector clamped_uniform_knots(std::size_t n_ctrl, int degree) {
    if (degree < 0) throw std::invalid_argument("clamped_uniform_knots: degree must be >= 0");
    if (n_ctrl < static_cast<std::size_t>(degree) + 1) {
        throw std::invalid_argument("clamped_uniform_knots: need n_ctrl >= degree + 1, got " +
                                    std::to_string(n_ctrl) + " for degree " +
                                    std::to_string(degree));
    }
    KnotVector kv;
    kv.values.reserve(n_ctrl + degree + 1);
    const std::size_t interior = n_ctrl - degree - 1;
    for (int i = 0; i <= degree; ++i) kv.values.push_back(0.0);
    for (std::size_t i = 1; i <= interior; ++i) {
        kv.values.push_back(static_cast<double>(i) / static_cast<double>(n_ctrl - degree));
    }
    for (int i = 0; i <= degree; ++i) kv.values.push_back(1.0);
    return kv;
}

void validate_surface(const NurbsSurface& s) {
    const auto& g = s.grid;
    if (g.rows == 0 || g.cols == 0) throw std::invalid_argument("surface: empty control grid");
    if (g.points.size() != g.rows * g.cols || g.weights.size() != g.rows * g.cols) {
        throw std::invalid_argument("surface: control grid storage does not match rows * cols");
    }
    if (s.degrees.p < 1 || s.degrees.q < 1) {
        throw std::invalid_argument("surface: degrees must be >= 1");
    }
    if (g.cols < static_cast<std::size_t>(s.degrees.p) + 1 ||
        g.rows < static_cast<std::size_t>(s.degrees.q) + 1) {
        throw std::invalid_argument("surface: need degree + 1 control points per direction");
    }
    for (double w : g.weights) {
        if (!(w > 0.0)) throw std::invalid_argument("surface: weights must be positive");
    }
    auto check_knots = [](const KnotVector& kv, std::size_t n_ctrl, int degree,
                          const char* name) {
        const std::size_t expected = n_ctrl + static_cast<std::size_t>(degree) + 1;
        if (kv.values.size() != expected) {
            throw std::invalid_argument(std::string(name) + ": expected " +
                                        std::to_string(expected) + " knots, got " +
                                        std::to_string(kv.values.size()));
        }
        for (std::size_t i = 0; i < kv.values.size(); ++i) {
            const double v = kv.values[i];
            if (!(v >= 0.0 && v <= 1.0)) {
                throw std::invalid_argument(std::string(name) + ": knot outside [0, 1]");
            }
            if (i > 0 && v < kv.values[i - 1]) {
                throw std::invalid_argument(std::string(name) + ": knots must be nondecreasing");
            }
        }
        for (int i = 0; i <= degree; ++i) {
            if (kv.values[static_cast<std::size_t>(i)] != 0.0 ||
                kv.values[kv.values.size() - 1 - static_cast<std::size_t>(i)] != 1.0) {
                throw std::invalid_argument(std::string(name) + ": knots must be clamped");
            }
        }
    };
    check_knots(s.knots_u, g.cols, s.degrees.p, "knots_u");
    check_knots(s.knots_v, g.rows, s.degrees.q, "knots_v");
}

std::vector<double> basis_functions(const KnotVector& knots, int degree, double u) {
    check_basis_inputs(knots, degree, u);
    auto table = basis_table(knots.values, degree, u);
    return std::move(table[static_cast<std::size_t>(degree)]);
}

std::vector<std::vector<double>> basis_derivatives(const KnotVector& knots, int degree,
                                                   double u, int n_derivs) {
    check_basis_inputs(knots, degree, u);
    if (n_derivs < 0) throw std::invalid_argument("basis_derivatives: n_derivs must be >= 0");
    const auto table = basis_table(knots.values, degree, u);
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(n_derivs) + 1);
    for (int r = 0; r <= n_derivs; ++r) {
        out.push_back(derivative_level(table, knots.values, r, degree));
    }
    return out;
}

Vec3 evaluate_surface(const NurbsSurface& s, double u, double v) {
    const auto nu = basis_functions(s.knots_u, s.degrees.p, u);
    const auto mv = basis_functions(s.knots_v, s.degrees.q, v);
    Vec3 num{};
    double den = 0.0;
    for (std::size_t i = 0; i < s.grid.rows; ++i) {
        if (mv[i] == 0.0) continue;
        for (std::size_t j = 0; j < s.grid.cols; ++j) {
            const double b = nu[j] * mv[i] * s.grid.weight(i, j);
            if (b == 0.0) continue;
            num += b * s.grid.at(i, j);
            den += b;
        }
    }
    return {num.x / den, num.y / den, num.z / den};
}

SampleGrid evaluate_grid(const NurbsSurface& s, std::size_t n_u, std::size_t n_v) {
    if (n_u < 2 || n_v < 2) {
        throw std::invalid_argument("evaluate_grid: need at least 2 samples per direction");
    }
    SampleGrid out;
    out.n_u = n_u;
    out.n_v = n_v;
    out.params.reserve(n_u * n_v);
    out.positions.reserve(n_u * n_v);

    // Basis values are shared along rows/columns of the lattice.
    std::vector<std::vector<double>> nu(n_u), mv(n_v);
    std::vector<double> us(n_u), vs(n_v);
    for (std::size_t a = 0; a < n_u; ++a) {
        us[a] = static_cast<double>(a) / static_cast<double>(n_u - 1);
        nu[a] = basis_functions(s.knots_u, s.degrees.p, us[a]);
    }
    for (std::size_t b = 0; b < n_v; ++b) {
        vs[b] = static_cast<double>(b) / static_cast<double>(n_v - 1);
        mv[b] = basis_functions(s.knots_v, s.degrees.q, vs[b]);
    }
    for (std::size_t a = 0; a < n_u; ++a) {
        for (std::size_t b = 0; b < n_v; ++b) {
            Vec3 num{};
            double den = 0.0;
            for (std::size_t i = 0; i < s.grid.rows; ++i) {
                const double mvi = mv[b][i];
                if (mvi == 0.0) continue;
                for (std::size_t j = 0; j < s.grid.cols; ++j) {
                    const double bw = nu[a][j] * mvi * s.grid.weight(i, j);
                    if (bw == 0.0) continue;
                    num += bw * s.grid.at(i, j);
                    den += bw;
                }
            }
            out.params.push_back({us[a], vs[b]});
            out.positions.push_back({num.x / den, num.y / den, num.z / den});
        }
    }
    return out;
}

std::vector<double> control_point_jacobian(const NurbsSurface& s, double u, double v) {
    const auto nu = basis_functions(s.knots_u, s.degrees.p, u);
    const auto mv = basis_functions(s.knots_v, s.degrees.q, v);
    std::vector<double> out(s.grid.rows * s.grid.cols, 0.0);
    double den = 0.0;
    for (std::size_t i = 0; i < s.grid.rows; ++i) {
        for (std::size_t j = 0; j < s.grid.cols; ++j) {
            const double b = nu[j] * mv[i] * s.grid.weight(i, j);
            out[i * s.grid.cols + j] = b;
            den += b;
        }
    }
    for (double& e : out) e /= den;
    return out;
}

SecondDerivativeJacobian second_derivative_jacobian(const NurbsSurface& s, double u, double v) {
    const double uc = clamp_param(u);
    const double vc = clamp_param(v);
    const auto du = basis_derivatives(s.knots_u, s.degrees.p, uc, 2);
    const auto dv = basis_derivatives(s.knots_v, s.degrees.q, vc, 1);

    const std::size_t rows = s.grid.rows;
    const std::size_t cols = s.grid.cols;
    const std::size_t n = rows * cols;

    // Numerator terms n_ij = Nu_j Mv_i w_ij and the denominator W with its
    // partial derivatives; quotient rule then gives the rational scalars.
    std::vector<double> n0(n), n_u(n), n_uu(n), n_v(n), n_uv(n);
    double w0 = 0.0, w_u = 0.0, w_uu = 0.0, w_v = 0.0, w_uv = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double w = s.grid.weight(i, j);
            const std::size_t k = i * cols + j;
            n0[k] = du[0][j] * dv[0][i] * w;
            n_u[k] = du[1][j] * dv[0][i] * w;
            n_uu[k] = du[2][j] * dv[0][i] * w;
            n_v[k] = du[0][j] * dv[1][i] * w;
            n_uv[k] = du[1][j] * dv[1][i] * w;
            w0 += n0[k];
            w_u += n_u[k];
            w_uu += n_uu[k];
            w_v += n_v[k];
            w_uv += n_uv[k];
        }
    }

    SecondDerivativeJacobian out;
    out.d2u.resize(n);
    out.dudv.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = n0[k] / w0;
        const double r_u = (n_u[k] - r * w_u) / w0;
        const double r_v = (n_v[k] - r * w_v) / w0;
        out.d2u[k] = (n_uu[k] - 2.0 * r_u * w_u - r * w_uu) / w0;
        out.dudv[k] = (n_uv[k] - r_u * w_v - r_v * w_u - r * w_uv) / w0;
    }
    return out;
}

SecondDerivatives second_derivatives(const NurbsSurface& s, double u, double v) {
    const auto jac = second_derivative_jacobian(s, u, v);
    SecondDerivatives out;
    for (std::size_t k = 0; k < jac.d2u.size(); ++k) {
        out.d2_du2 += jac.d2u[k] * s.grid.points[k];
        out.d2_dudv += jac.dudv[k] * s.grid.points[k];
    }
    return out;
}

}  // namespace splinefit
