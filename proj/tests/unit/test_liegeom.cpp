#include "doctest.h"
#include "support.hpp"

#include "s3e/liegeom/curvature.hpp"

#include <cmath>

using namespace s3e;
using namespace s3e::test;

namespace {

BasisChange random_params() {
    BasisChange p;
    p.a = uniform(0.3, 3), p.b = uniform(0.3, 3), p.c = uniform(0.3, 3);
    p.d = uniform(0.3, 3), p.e = uniform(0.3, 3), p.f = uniform(0.3, 3);
    p.x = uniform(-2, 2), p.y = uniform(-2, 2), p.z = uniform(-2, 2);
    p.u = uniform(-2, 2), p.v = uniform(-2, 2), p.w = uniform(-2, 2);
    p.alpha = uniform(-2, 2), p.beta = uniform(-2, 2), p.gamma = uniform(-2, 2);
    return p;
}

BasisChange nearly_kahler_row() {
    const double r2 = std::sqrt(2.0), q3 = std::pow(3.0, 0.25);
    BasisChange p;
    p.a = p.b = p.c = q3 / r2;
    p.d = p.e = p.f = r2 / q3;
    p.x = p.y = p.z = 1 / (r2 * q3);
    return p;
}

double max_asym(const Mat6& m) {
    double r = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) r = std::max(r, std::abs(m[i][j] - m[j][i]));
    return r;
}

}  // namespace

TEST_SUITE("liegeom") {

TEST_CASE("structure constants") {
    const LieAlgebra& g = structure_constants_normalized();
    CHECK(g.kappa == 1.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j)
            for (int k = 0; k < 6; ++k) CHECK(g.c[i][j][k] == 0.0);  // [E_i, F_j] = 0
    Mat6 B = killing_form(g);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(std::abs(-0.5 * B[i][j] - (i == j ? 1.0 : 0.0)) < 1e-14);
    CHECK(jacobi_defect(g) < 1e-14);
}

TEST_CASE("standard metric") {
    CurvatureReport r = curvature(BasisChange{});
    CHECK(r.scalar == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(r.volume_factor == doctest::Approx(1.0));
    REQUIRE(r.einstein_lambda.has_value());
    CHECK(*r.einstein_lambda == doctest::Approx(0.5));
    CHECK(r.einstein_residual < 1e-12);
    CHECK(r.invariant_R2 == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("nearly Kaehler metric") {
    CurvatureReport r = curvature(nearly_kahler_row());
    const double s = 5 / std::sqrt(3.0);
    CHECK(std::abs(r.scalar - s) < 1e-12);
    CHECK(std::abs(*r.einstein_lambda - 5 / (6 * std::sqrt(3.0))) < 1e-12);
    CHECK(r.einstein_residual < 1e-10);
    CHECK(r.invariant_R2 == doctest::Approx(1.66666666666667).epsilon(1e-12));
    CHECK(scalar_curvature_formula(nearly_kahler_row()) == doctest::Approx(s).epsilon(1e-13));
}

TEST_CASE("table rows (2) and (4)") {
    BasisChange p;
    p.x = p.y = p.z = 1;
    CurvatureReport r = curvature(p);
    CHECK(r.scalar == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(r.einstein_residual < 1e-10);

    const double h = 1 / std::sqrt(2.0);
    BasisChange q;
    q.a = q.b = q.c = h;
    q.d = q.e = q.f = std::sqrt(2.0);
    q.x = q.y = q.z = h;
    CHECK(scalar_curvature_formula(q) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(curvature(q).einstein_residual < 1e-10);
    CHECK(scalar_curvature_formula(BasisChange{}) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("non-positive diagonal is rejected") {
    BasisChange p;
    p.c = 0;
    CHECK_THROWS_AS(curvature(p), GeometryError);
    p.c = -1;
    CHECK_THROWS_AS(curvature(p), GeometryError);
}

TEST_CASE("closed-form S agrees with the Koszul oracle at 100 random points") {
    for (int i = 0; i < 100; ++i) {
        BasisChange p = random_params();
        CurvatureReport r = curvature(p);
        double f = scalar_curvature_formula(p);
        CHECK(std::abs(f - r.scalar) / (1 + std::abs(r.scalar)) < 1e-9);
        CHECK(max_asym(r.ricci) < 1e-12);
        CHECK(r.ricci_asymmetry < 1e-12);
        CHECK(std::abs(r.volume_factor - 1 / p.det()) <= 1e-14 * std::abs(r.volume_factor));
        double tr = 0;
        for (int k = 0; k < 6; ++k) tr += r.ricci[k][k];
        CHECK(std::abs(tr - r.scalar) < 1e-10 * (1 + std::abs(r.scalar)));
    }
}

TEST_CASE("homothety scaling at 20 random points") {
    for (int i = 0; i < 20; ++i) {
        BasisChange p = random_params();
        const double c = uniform(0.5, 2.0);
        // g -> c^2 g shrinks every g-orthonormal vector by 1/c
        auto arr = p.to_array();
        for (auto& v : arr) v /= c;
        BasisChange q = BasisChange::from_array(arr);
        CurvatureReport rp = curvature(p), rq = curvature(q);
        CHECK(rq.scalar == doctest::Approx(rp.scalar / (c * c)).epsilon(1e-10));
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) CHECK(std::abs(rq.ricci[a][b] - rp.ricci[a][b] / (c * c)) < 1e-10);
        // lambda for an Einstein metric scales the same way
        CurvatureReport nk = curvature(nearly_kahler_row());
        auto nka = nearly_kahler_row().to_array();
        for (auto& v : nka) v /= c;
        CurvatureReport nks = curvature(BasisChange::from_array(nka));
        CHECK(*nks.einstein_lambda == doctest::Approx(*nk.einstein_lambda / (c * c)).epsilon(1e-12));
    }
}

TEST_CASE("lambda given explicitly") {
    CurvatureReport r = curvature(BasisChange{}, 0.25);
    CHECK(r.einstein_residual == doctest::Approx(0.25));
}

TEST_CASE("parameter array layout") {
    auto names = basis_change_names();
    CHECK(std::string(names[0]) == "a");
    CHECK(std::string(names[14]) == "gamma");
    BasisChange p = random_params();
    auto back = BasisChange::from_array(p.to_array());
    CHECK(back.to_array() == p.to_array());
}

}  // TEST_SUITE
