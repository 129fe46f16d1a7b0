#include <doctest.h>

#include "largesol/errors.hpp"
#include "largesol/radial_ode.hpp"
#include "largesol/verify/oracles.hpp"

#include <cmath>
#include <random>

using namespace largesol;

namespace {
const ProblemParams kSym{3, 0, 0, 2, 2};
}

TEST_CASE("series start: first Picard term") {
    const double eps = 1e-3;
    const RadialState s = series_start(kSym, 1, 1, eps);
    CHECK(s.r == eps);
    // u0 + v0^delta eps^2 / (2N)
    CHECK(std::fabs(s.u - 1 - eps * eps / 6) < 1e-12);
    CHECK(std::fabs(s.v - 1 - eps * eps / 6) < 1e-12);
    CHECK(s.up == doctest::Approx(eps / 3).epsilon(1e-5));
}

TEST_CASE("series start: one-sided data") {
    const ProblemParams p{4, 0.5, 1, 1.5, 2.5};
    const double u0 = 2, eps = 0.05;
    const RadialState s = series_start(p, u0, 0, eps);
    const double v_lead = std::pow(u0, p.mu) * std::pow(eps, 2 + p.b) / ((p.N + p.b) * (2 + p.b));
    CHECK(s.v == doctest::Approx(v_lead).epsilon(1e-8));
    // u - u0 = u0^(delta mu) eps^e / (((N+b)(2+b))^delta (N+a+(2+b)delta) e),  e = 2+a+(2+b)delta.
    // It sits near the rounding level of u0, hence the loose tolerance.
    const double expo = 2 + p.a + (2 + p.b) * p.delta;
    const double u_lead = std::pow(u0, p.delta * p.mu) * std::pow(eps, expo) /
                          (std::pow((p.N + p.b) * (2 + p.b), p.delta) * (p.N + p.a + (2 + p.b) * p.delta) * expo);
    CHECK(s.u - u0 == doctest::Approx(u_lead).epsilon(1e-3));
}

TEST_CASE("series start rejects trivial data and large radii") {
    CHECK_THROWS_AS(series_start(kSym, 0, 0, 1e-3), DomainError);
    CHECK_THROWS_AS(series_start(kSym, 1, 1, 2.0), ContractionError);
    const auto a = auto_series_start(kSym, 1, 1);
    CHECK(a.eps > 0);
    CHECK(a.picard_change <= 1.0);
}

TEST_CASE("N = 2 and N = 1 kernels") {
    for (double N : {1.0, 2.0}) {
        const ProblemParams p{N, 0, 0, 2, 2};
        const double eps = 1e-3;
        const RadialState s = series_start(p, 1, 1, eps);
        CHECK(std::fabs(s.u - 1 - eps * eps / (2 * N)) < 1e-12);
    }
}

TEST_CASE("power solution is preserved by the integrator") {
    const double r0 = 0.1;
    const RadialState s{r0, 2 / (r0 * r0), -4 / (r0 * r0 * r0), 2 / (r0 * r0), -4 / (r0 * r0 * r0)};
    const auto traj = integrate(kSym, s, 10.0);
    CHECK(traj.termination == Termination::ReachedEnd);
    double worst = 0;
    for (const auto& smp : traj.samples) {
        const double exact = 2 / (smp.state.r * smp.state.r);
        worst = std::max({worst, std::fabs(smp.state.u / exact - 1), std::fabs(smp.state.v / exact - 1)});
    }
    CHECK(worst < 1e-6);
    CHECK(traj.last().r == 10.0);
}

TEST_CASE("trivial data stays zero") {
    const auto traj = integrate_regular(kSym, 0, 0, 5.0);
    CHECK(traj.termination == Termination::ReachedEnd);
    CHECK(traj.crossings.empty());
    for (const auto& s : traj.samples) CHECK(s.state.u == 0);
}

TEST_CASE("regular solutions blow up; symmetric data keeps u = v") {
    const auto run = blowup_run(kSym, 1, 1);
    CHECK(run.trajectory.termination == Termination::BlowupEvent);
    CHECK(run.estimate.R_hat > run.trajectory.r_last());
    CHECK(run.estimate.err < 1e-8 * run.estimate.R_hat);
    for (const auto& s : run.trajectory.samples) CHECK(s.state.u == s.state.v);
    // r^(N-1) u' is nondecreasing
    double prev = -1;
    for (const auto& s : run.trajectory.samples) {
        const double flux = s.state.r * s.state.r * s.state.up;
        CHECK(flux >= prev);
        prev = flux;
    }
}

TEST_CASE("blow-up radius against the line quadrature oracle") {
    const double oracle = oracle::line_blowup_radius(3, 1);
    CHECK(oracle == doctest::Approx(oracle::line_blowup_radius_p3_closed_form()).epsilon(1e-13));
    CHECK(oracle == doctest::Approx(1.8540746773013719).epsilon(1e-14));
    const auto est = estimate_blowup_radius(ProblemParams{1, 0, 0, 3, 3}, 1, 1);
    CHECK(std::fabs(est.R_hat - oracle) < 1e-6);
    MESSAGE("R_hat - oracle = " << est.R_hat - oracle << ", err = " << est.err);
    // another power, another amplitude
    const double o2 = oracle::line_blowup_radius(2, 0.7);
    const auto e2 = estimate_blowup_radius(ProblemParams{1, 0, 0, 2, 2}, 0.7, 0.7);
    CHECK(std::fabs(e2.R_hat - o2) < 1e-6);
}

TEST_CASE("scaling law of the blow-up radius") {
    const double g = 2, x = 2;
    const double R = estimate_blowup_radius(kSym, 1, 0.3).R_hat;
    const double R2 = estimate_blowup_radius(kSym, std::pow(2.0, g), 0.3 * std::pow(2.0, x)).R_hat;
    CHECK(2 * R2 / R == doctest::Approx(1).epsilon(1e-8));
}

TEST_CASE("weighted blow-up converges with the R correction") {
    const ProblemParams p{3, 1, 0.5, 2, 1.5};
    const auto est = estimate_blowup_radius(p, 1, 1);
    CHECK(est.err < 1e-7 * est.R_hat);
}

TEST_CASE("ode_defect") {
    const auto j = oracle::power_solution_jet(kSym, 0.7);
    const auto d = ode_defect(kSym, j);
    CHECK(std::fabs(d[0]) < 1e-12 * j.upp);
    CHECK(std::fabs(d[1]) < 1e-12 * j.vpp);
    CHECK(ode_defect(kSym, RadialJet{1.0, 0, 0, 0, 0, 0, 0}) == std::array<double, 2>{0, 0});

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> rr(0.2, 3.0);
    for (int i = 0; i < 10; ++i) {
        auto jp = oracle::power_solution_jet(kSym, rr(rng));
        const double us = jp.u, h = 1e-3;
        jp.u += h;
        const auto dp = ode_defect(kSym, jp);
        // first-order Taylor: -mu u*^(mu-1) h r^b
        CHECK(dp[1] == doctest::Approx(-2 * us * h).epsilon(1e-3));
    }
}

TEST_CASE("Kelvin transform") {
    SUBCASE("power solution maps to exponent N - 2 - gamma_ab") {
        const ProblemParams p{5, 0.5, -1, 1.2, 1.3};
        const Exponents e = derive_exponents(p);
        std::vector<RadialJet> jets;
        for (double r : {0.5, 1.0, 2.0}) jets.push_back(oracle::power_solution_jet(p, r));
        const auto k = kelvin_transform(jets, p.N);
        const double slope = std::log(k[2].u / k[0].u) / std::log(k[2].r / k[0].r);
        CHECK(slope == doctest::Approx(-(p.N - 2 - e.gamma_ab)).epsilon(1e-12));
        const ProblemParams kp = kelvin_params(p);
        for (const auto& j : k) {
            const auto d = ode_relative_defect(kp, j);
            CHECK(std::fabs(d[0]) < 1e-12);
            CHECK(std::fabs(d[1]) < 1e-12);
        }
    }
    SUBCASE("N = 2 is plain inversion") {
        const auto k = kelvin_transform(std::vector<RadialJet>{{2.0, 3.0, 1.0, 0.5, 4.0, 2.0, 1.0}}, 2);
        CHECK(k[0].r == 0.5);
        CHECK(k[0].u == 3.0);
    }
    SUBCASE("trajectory image solves the transformed system; double transform is the identity") {
        const auto traj = integrate_regular(kSym, 1, 1, 1.0);
        const auto k = kelvin_transform(traj);
        const ProblemParams kp = kelvin_params(kSym);
        double worst = 0;
        for (const auto& j : k) {
            const auto d = ode_relative_defect(kp, j);
            worst = std::max({worst, std::fabs(d[0]), std::fabs(d[1])});
        }
        CHECK(worst < 1e-8);
        const auto back = kelvin_transform(k, kSym.N);
        const auto orig = traj.jets();
        REQUIRE(back.size() == orig.size());
        double dev = 0;
        for (std::size_t i = 0; i < orig.size(); ++i)
            dev = std::max({dev, std::fabs(back[i].r - orig[i].r) / orig[i].r,
                            std::fabs(back[i].u - orig[i].u) / std::fabs(orig[i].u),
                            // derivatives are compared on the scale |v|/r, since the map subtracts terms of that size
                            std::fabs(back[i].vp - orig[i].vp) / (std::fabs(orig[i].vp) + std::fabs(orig[i].v) / orig[i].r)});
        CHECK(dev < 1e-12);
    }
}

TEST_CASE("biharmonic: explicit ball solution") {
    const double N = 8;
    const ProblemParams p = biharmonic_params(N, 3, 0);
    double worst = 0;
    for (int i = 0; i <= 90; ++i) {
        const double r = 0.05 + 0.9 * i / 90;
        const auto d = ode_relative_defect(p, oracle::explicit_biharmonic_jet(N, r), Nonlinearity::Biharmonic);
        worst = std::max({worst, std::fabs(d[0]), std::fabs(d[1])});
    }
    CHECK(worst < 1e-12);

    const auto j0 = oracle::explicit_biharmonic_jet(N, 0.05);
    const auto traj = integrate(p, RadialState{j0.r, j0.u, j0.up, j0.v, j0.vp}, 0.95, {}, Nonlinearity::Biharmonic);
    const auto j1 = oracle::explicit_biharmonic_jet(N, 0.95);
    CHECK(traj.last().u == doctest::Approx(j1.u).epsilon(1e-8));
}

TEST_CASE("biharmonic with v0 = 0 matches the positive-cone system while u > 0") {
    const auto a = integrate_biharmonic(3, 3, 0, 1, 0, {}, 0.5);
    const auto b = integrate_regular(biharmonic_params(3, 3, 0), 1, 0, 0.5);
    CHECK(a.last().u == doctest::Approx(b.last().u).epsilon(1e-10));
}

TEST_CASE("negativity is reported") {
    // Start with u' strongly negative: u crosses zero in the positive cone.
    CHECK_THROWS_AS(integrate(kSym, RadialState{1.0, 0.1, -5.0, 0.1, 0.0}, 2.0), NegativityError);
}
