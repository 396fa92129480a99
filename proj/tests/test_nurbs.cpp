#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "splinefit/nurbs.hpp"
#include "splinefit/rng.hpp"

using namespace splinefit;

TEST_SUITE_BEGIN("nurbs");

TEST_CASE("clamped uniform knot vectors") {
    const auto k63 = clamped_uniform_knots(6, 3);
    const std::vector<double> want{0, 0, 0, 0, 1.0 / 3.0, 2.0 / 3.0, 1, 1, 1, 1};
    REQUIRE(k63.values.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(k63.values[i] == doctest::Approx(want[i]));

    const auto k43 = clamped_uniform_knots(4, 3);
    CHECK(k43.values == std::vector<double>{0, 0, 0, 0, 1, 1, 1, 1});

    const auto k32 = clamped_uniform_knots(3, 2);
    CHECK(k32.values == std::vector<double>{0, 0, 0, 1, 1, 1});

    const auto k20 = clamped_uniform_knots(2, 0);
    CHECK(k20.values == std::vector<double>{0, 0.5, 1});

    CHECK_THROWS_AS(clamped_uniform_knots(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(clamped_uniform_knots(2, 5), std::invalid_argument);
}

TEST_CASE("basis functions reproduce Bernstein values on a single span") {
    KnotVector k{{0, 0, 0, 0, 1, 1, 1, 1}};
    const auto n = basis_functions(k, 3, 0.5);
    REQUIRE(n.size() == 4);
    CHECK(n[0] == doctest::Approx(0.125));
    CHECK(n[1] == doctest::Approx(0.375));
    CHECK(n[2] == doctest::Approx(0.375));
    CHECK(n[3] == doctest::Approx(0.125));
}

TEST_CASE("basis functions at domain ends") {
    KnotVector k = clamped_uniform_knots(6, 3);
    const auto at0 = basis_functions(k, 3, 0.0);
    CHECK(at0[0] == 1.0);
    for (std::size_t i = 1; i < at0.size(); ++i) CHECK(at0[i] == 0.0);
    const auto at1 = basis_functions(k, 3, 1.0);
    CHECK(at1.back() == 1.0);
    for (std::size_t i = 0; i + 1 < at1.size(); ++i) CHECK(at1[i] == 0.0);
}

TEST_CASE("degree zero basis is the span indicator") {
    KnotVector k{{0, 0.5, 1}};
    const auto n = basis_functions(k, 0, 0.25);
    REQUIRE(n.size() == 2);
    CHECK(n[0] == 1.0);
    CHECK(n[1] == 0.0);
    const auto end = basis_functions(k, 0, 1.0);
    CHECK(end[0] == 0.0);
    CHECK(end[1] == 1.0);
}

TEST_CASE("basis values match the naive recursion") {
    KnotVector k = clamped_uniform_knots(5, 2);
    const auto n = basis_functions(k, 2, 0.37);
    REQUIRE(n.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(n[i] == doctest::Approx(oracles::cox_de_boor(k.values, i, 2, 0.37)).epsilon(1e-14));
    }

    Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const double u = rng.uniform01();
        const auto v = basis_functions(k, 2, u);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(v[i] ==
                  doctest::Approx(oracles::cox_de_boor(k.values, i, 2, u)).epsilon(1e-14));
        }
    }
}

TEST_CASE("basis input validation") {
    KnotVector k = clamped_uniform_knots(6, 3);
    CHECK_THROWS_AS(basis_functions(k, 3, -0.1), std::domain_error);
    CHECK_THROWS_AS(basis_functions(k, 3, 1.1), std::domain_error);
    KnotVector tiny{{0, 1}};
    CHECK_THROWS_AS(basis_functions(tiny, 3, 0.5), std::invalid_argument);
}

TEST_CASE("partition of unity, non-negativity, local support") {
    Rng rng(7);
    for (const auto& [n_ctrl, degree] : std::vector<std::pair<std::size_t, int>>{
             {6, 3}, {3, 2}, {5, 2}, {8, 3}, {4, 1}}) {
        KnotVector k = clamped_uniform_knots(n_ctrl, degree);
        for (int trial = 0; trial < 200; ++trial) {
            const double u = trial == 0 ? 0.0 : (trial == 1 ? 1.0 : rng.uniform01());
            const auto n = basis_functions(k, degree, u);
            double sum = 0.0;
            for (std::size_t i = 0; i < n.size(); ++i) {
                CHECK(n[i] >= 0.0);
                sum += n[i];
                const bool in_support =
                    u >= k.values[i] &&
                    (u < k.values[i + degree + 1] || (u == 1.0 && k.values[i + degree + 1] == 1.0));
                if (!in_support) CHECK(n[i] == 0.0);
            }
            CHECK(std::abs(sum - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("surface corners interpolate the corner control points") {
    Rng rng(11);
    auto s = oracles::random_leaf_shaped_surface(rng, false);
    const Vec3 c00 = evaluate_surface(s, 0.0, 0.0);
    CHECK(c00.x == s.grid.at(0, 0).x);
    CHECK(c00.y == s.grid.at(0, 0).y);
    CHECK(c00.z == s.grid.at(0, 0).z);
    const Vec3 c10 = evaluate_surface(s, 1.0, 0.0);
    CHECK(c10.x == s.grid.at(0, 5).x);
    CHECK(c10.y == s.grid.at(0, 5).y);
    CHECK(c10.z == s.grid.at(0, 5).z);
    const Vec3 c01 = evaluate_surface(s, 0.0, 1.0);
    CHECK(c01.x == s.grid.at(2, 0).x);
    const Vec3 c11 = evaluate_surface(s, 1.0, 1.0);
    CHECK(c11.x == s.grid.at(2, 5).x);
}

TEST_CASE("surface evaluation matches the direct rational sum") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = oracles::random_leaf_shaped_surface(rng, true);
        for (int k = 0; k < 25; ++k) {
            const double u = rng.uniform01();
            const double v = rng.uniform01();
            const Vec3 got = evaluate_surface(s, u, v);
            const Vec3 want = oracles::rational_surface(s, u, v);
            CHECK(got.x == doctest::Approx(want.x).epsilon(1e-13));
            CHECK(got.y == doctest::Approx(want.y).epsilon(1e-13));
            CHECK(got.z == doctest::Approx(want.z).epsilon(1e-13));
        }
    }
}

TEST_CASE("constant weights degenerate to the polynomial surface") {
    Rng rng(17);
    auto s = oracles::random_leaf_shaped_surface(rng, false);
    for (double c : {0.25, 1.0, 3.5}) {
        auto sc = s;
        for (double& w : sc.grid.weights) w = c;
        for (int k = 0; k < 50; ++k) {
            const double u = rng.uniform01();
            const double v = rng.uniform01();
            const Vec3 rational = evaluate_surface(sc, u, v);
            const Vec3 poly = oracles::polynomial_surface(sc, u, v);
            CHECK(std::abs(rational.x - poly.x) <= 1e-12 * std::max(1.0, std::abs(poly.x)));
            CHECK(std::abs(rational.y - poly.y) <= 1e-12 * std::max(1.0, std::abs(poly.y)));
            CHECK(std::abs(rational.z - poly.z) <= 1e-12 * std::max(1.0, std::abs(poly.z)));
        }
    }
}

TEST_CASE("evaluation commutes with affine maps of the control net") {
    Rng rng(19);
    auto s = oracles::random_leaf_shaped_surface(rng, true);
    auto affine = [](const Vec3& p) {
        return Vec3{1.7 * p.x - 0.3 * p.y + 2.0, 0.4 * p.x + 1.1 * p.z - 5.0,
                    0.9 * p.y + 0.2 * p.z + 0.5};
    };
    auto st = s;
    for (auto& p : st.grid.points) p = affine(p);
    for (int k = 0; k < 50; ++k) {
        const double u = rng.uniform01();
        const double v = rng.uniform01();
        const Vec3 direct = evaluate_surface(st, u, v);
        const Vec3 mapped = affine(evaluate_surface(s, u, v));
        CHECK(direct.x == doctest::Approx(mapped.x).epsilon(1e-12));
        CHECK(direct.y == doctest::Approx(mapped.y).epsilon(1e-12));
        CHECK(direct.z == doctest::Approx(mapped.z).epsilon(1e-12));
    }
}

TEST_CASE("evaluate_grid lattice layout and corner samples") {
    Rng rng(23);
    auto s = oracles::random_leaf_shaped_surface(rng, false);
    const auto g = evaluate_grid(s, 2, 2);
    REQUIRE(g.positions.size() == 4);
    CHECK(g.params[0][0] == 0.0);
    CHECK(g.params[0][1] == 0.0);
    CHECK(g.params[3][0] == 1.0);
    CHECK(g.params[3][1] == 1.0);
    CHECK(g.positions[0].x == s.grid.at(0, 0).x);
    CHECK(g.positions[3].x == s.grid.at(2, 5).x);

    const auto g32 = evaluate_grid(s, 32, 8);
    REQUIRE(g32.positions.size() == 256);
    for (std::size_t k = 0; k < g32.positions.size(); k += 37) {
        const Vec3 direct = evaluate_surface(s, g32.params[k][0], g32.params[k][1]);
        CHECK(g32.positions[k].x == doctest::Approx(direct.x).epsilon(1e-13));
        CHECK(g32.positions[k].z == doctest::Approx(direct.z).epsilon(1e-13));
    }
    CHECK_THROWS_AS(evaluate_grid(s, 1, 8), std::invalid_argument);
}

TEST_CASE("control point jacobian at the origin corner") {
    Rng rng(29);
    auto s = oracles::random_leaf_shaped_surface(rng, false);
    const auto jac = control_point_jacobian(s, 0.0, 0.0);
    CHECK(jac[0] == 1.0);
    for (std::size_t k = 1; k < jac.size(); ++k) CHECK(jac[k] == 0.0);
}

TEST_CASE("control point jacobian rows sum to one and respect support") {
    Rng rng(31);
    auto s = oracles::random_leaf_shaped_surface(rng, true);
    for (int trial = 0; trial < 100; ++trial) {
        const double u = rng.uniform01();
        const double v = rng.uniform01();
        const auto jac = control_point_jacobian(s, u, v);
        double sum = 0.0;
        for (double e : jac) sum += e;
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        const auto nu = basis_functions(s.knots_u, s.degrees.p, u);
        for (std::size_t i = 0; i < s.grid.rows; ++i) {
            for (std::size_t j = 0; j < s.grid.cols; ++j) {
                if (nu[j] == 0.0) CHECK(jac[i * s.grid.cols + j] == 0.0);
            }
        }
    }
}

TEST_CASE("control point jacobian matches forward differences") {
    Rng rng(37);
    auto s = oracles::random_leaf_shaped_surface(rng, true);
    const double h = 1e-6;
    for (int trial = 0; trial < 10; ++trial) {
        const double u = rng.uniform01();
        const double v = rng.uniform01();
        const auto jac = control_point_jacobian(s, u, v);
        const Vec3 base = evaluate_surface(s, u, v);
        for (std::size_t i = 0; i < s.grid.rows; ++i) {
            for (std::size_t j = 0; j < s.grid.cols; ++j) {
                auto sp = s;
                sp.grid.at(i, j).x += h;
                const double fd = (evaluate_surface(sp, u, v).x - base.x) / h;
                const double an = jac[i * s.grid.cols + j];
                CHECK(std::abs(fd - an) <= 1e-5 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST_CASE("second derivatives match central differences") {
    Rng rng(41);
    auto s = oracles::random_leaf_shaped_surface(rng, true);
    const double h = 1e-4;
    for (int trial = 0; trial < 30; ++trial) {
        const double u = rng.uniform(2 * h, 1.0 - 2 * h);
        const double v = rng.uniform(2 * h, 1.0 - 2 * h);
        const auto d = second_derivatives(s, u, v);

        auto at = [&](double uu, double vv) { return evaluate_surface(s, uu, vv); };
        const Vec3 fd_uu = (1.0 / (h * h)) * (at(u + h, v) - 2.0 * at(u, v) + at(u - h, v));
        const Vec3 fd_uv = (1.0 / (4 * h * h)) * (at(u + h, v + h) - at(u + h, v - h) -
                                                  at(u - h, v + h) + at(u - h, v - h));
        for (const auto& [got, want] : {std::pair{d.d2_du2.x, fd_uu.x},
                                        std::pair{d.d2_du2.y, fd_uu.y},
                                        std::pair{d.d2_du2.z, fd_uu.z},
                                        std::pair{d.d2_dudv.x, fd_uv.x},
                                        std::pair{d.d2_dudv.y, fd_uv.y},
                                        std::pair{d.d2_dudv.z, fd_uv.z}}) {
            CHECK(std::abs(got - want) <= 1e-3 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("second derivatives are linear in the control points") {
    Rng rng(43);
    auto s = oracles::random_leaf_shaped_surface(rng, true);
    auto s2 = s;
    for (auto& p : s2.grid.points) p *= 2.0;
    const auto a = second_derivatives(s, 0.41, 0.73);
    const auto b = second_derivatives(s2, 0.41, 0.73);
    CHECK(b.d2_du2.x == doctest::Approx(2.0 * a.d2_du2.x).epsilon(1e-13));
    CHECK(b.d2_du2.z == doctest::Approx(2.0 * a.d2_du2.z).epsilon(1e-13));
    CHECK(b.d2_dudv.y == doctest::Approx(2.0 * a.d2_dudv.y).epsilon(1e-13));
}

TEST_CASE("second derivatives take one-sided limits at the domain ends") {
    Rng rng(47);
    auto s = oracles::random_leaf_shaped_surface(rng, false);
    for (const auto& [u, v] : std::vector<std::pair<double, double>>{
             {0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {0.0, 0.5}, {1.0, 0.5}}) {
        const auto d = second_derivatives(s, u, v);
        CHECK(std::isfinite(d.d2_du2.x));
        CHECK(std::isfinite(d.d2_du2.z));
        CHECK(std::isfinite(d.d2_dudv.x));
        const auto near = second_derivatives(s, std::min(1.0 - 1e-7, std::max(1e-7, u)),
                                             std::min(1.0 - 1e-7, std::max(1e-7, v)));
        CHECK(d.d2_du2.z == doctest::Approx(near.d2_du2.z).epsilon(1e-4));
    }
}

TEST_CASE("second derivative jacobian contracts to the second derivatives") {
    Rng rng(53);
    auto s = oracles::random_leaf_shaped_surface(rng, true);
    for (int trial = 0; trial < 20; ++trial) {
        const double u = rng.uniform01();
        const double v = rng.uniform01();
        const auto jac = second_derivative_jacobian(s, u, v);
        const auto d = second_derivatives(s, u, v);
        Vec3 uu{}, uv{};
        double sum_uu = 0.0;
        for (std::size_t k = 0; k < jac.d2u.size(); ++k) {
            uu += jac.d2u[k] * s.grid.points[k];
            uv += jac.dudv[k] * s.grid.points[k];
            sum_uu += jac.d2u[k];
        }
        CHECK(uu.z == doctest::Approx(d.d2_du2.z).epsilon(1e-13));
        CHECK(uv.x == doctest::Approx(d.d2_dudv.x).epsilon(1e-13));
        // Derivative scalars of a partition of unity sum to zero.
        CHECK(std::abs(sum_uu) <= 1e-10);
    }
}

TEST_CASE("surface validation rejects inconsistent inputs") {
    Rng rng(59);
    auto s = oracles::random_leaf_shaped_surface(rng, false);
    CHECK_NOTHROW(validate_surface(s));

    auto bad = s;
    bad.knots_u.values.pop_back();
    CHECK_THROWS_AS(validate_surface(bad), std::invalid_argument);

    bad = s;
    bad.grid.weights[4] = 0.0;
    CHECK_THROWS_AS(validate_surface(bad), std::invalid_argument);

    bad = s;
    bad.knots_u.values[4] = 0.9;
    bad.knots_u.values[5] = 0.2;
    CHECK_THROWS_AS(validate_surface(bad), std::invalid_argument);

    bad = s;
    bad.degrees.p = 0;
    CHECK_THROWS_AS(validate_surface(bad), std::invalid_argument);
}

TEST_SUITE_END();
