#include <doctest.h>

#include "largesol/blowcurve.hpp"
#include "largesol/errors.hpp"
#include "largesol/verify/oracles.hpp"

#include <cmath>
#include <numbers>

using namespace largesol;

TEST_CASE("rho: scaling law and symmetry") {
    const Exponents e = derive_exponents(ProblemParams{3, 0, 0, 2, 2.5});
    const double r11 = rho(3, 2, 2, 1, 1);
    CHECK(rho(3, 2, 2, 4, 4) == doctest::Approx(r11 / 2).epsilon(1e-9));
    for (double lam : {0.5, 2.0}) {
        const double r = rho(3, 2, 2.5, std::pow(lam, e.gamma) * 0.7, std::pow(lam, e.xi) * 1.3);
        CHECK(lam * r / rho(3, 2, 2.5, 0.7, 1.3) == doctest::Approx(1).epsilon(1e-9));
    }
    CHECK(rho(3, 2, 2, 0.3, 1) == doctest::Approx(rho(3, 2, 2, 1, 0.3)).epsilon(1e-10));
    CHECK_THROWS_AS(rho(3, 2, 2, 0, 0), DomainError);
    CHECK_THROWS_AS(rho(3, 0.5, 1.5, 1, 1), DomainError);
}

TEST_CASE("rho on the line against the quadrature oracle") {
    const double want = oracle::line_blowup_radius(3, 1);
    CHECK(rho(1, 3, 3, 1, 1) == doctest::Approx(want).epsilon(1e-9));
    CHECK(want == doctest::Approx(oracle::line_blowup_radius_p3_closed_form()).epsilon(1e-12));
}

TEST_CASE("normalize_to_S") {
    const CurvePoint c = normalize_to_S(3, 2, 2, 1, 1);
    CHECK(c.rho_check == doctest::Approx(1).epsilon(1e-9));
    CHECK(c.theta == doctest::Approx(std::numbers::pi / 4));
    const CurvePoint again = normalize_to_S(3, 2, 2, c.u0, c.v0);
    CHECK(again.rho_at_angle == doctest::Approx(std::pow(std::hypot(c.u0, c.v0), 0.5)).epsilon(1e-9));
    CHECK(again.u0 == doctest::Approx(c.u0).epsilon(1e-9));
    const CurvePoint axis = normalize_to_S(3, 2, 2, 1, 0);
    CHECK(axis.v0 == 0);
    CHECK(axis.u0 > 0);
}

TEST_CASE("trace S") {
    const CurveTrace tr = trace_S(3, 2, 2, 33);
    REQUIRE(tr.points.size() == 33);
    CHECK(tr.max_rho_residual < 1e-3);
    CHECK(tr.max_mirror_error < 1e-6);
    CHECK(tr.max_outside < 1e-6);
    CHECK(tr.points.front().v0 == 0);
    CHECK(tr.points.back().u0 == 0);
    CHECK(tr.u0_bar == doctest::Approx(tr.v0_bar).epsilon(1e-9));
    CHECK(tr.diagonal_decreasing);
    for (std::size_t i = 1; i < tr.points.size(); ++i) CHECK(tr.points[i].theta > tr.points[i - 1].theta);
    // identical output for a different thread count
    const CurveTrace one = trace_S(3, 2, 2, 5, {}, CurveOptions{1});
    const CurveTrace many = trace_S(3, 2, 2, 5, {}, CurveOptions{4});
    for (std::size_t i = 0; i < 5; ++i) CHECK(one.points[i].u0 == many.points[i].u0);
    CHECK_THROWS_AS(trace_S(3, 0.8, 3, 5), DomainError);
}

TEST_CASE("refinement adds points where rho moves quickly") {
    const CurveTrace tr = trace_S(3, 1.5, 4, 5, {}, CurveOptions{0, true, 0.01});
    CHECK(tr.points.size() > 5);
    CHECK(tr.max_rho_residual < 1e-3);
}
