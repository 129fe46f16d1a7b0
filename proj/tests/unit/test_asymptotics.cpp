#include <doctest.h>

#include "largesol/asymptotics.hpp"
#include "largesol/errors.hpp"
#include "largesol/verify/oracles.hpp"

#include <cmath>

using namespace largesol;

namespace {
const ProblemParams kSym{3, 0, 0, 2, 2};
}

TEST_CASE("weighted power fit is exact on power laws") {
    std::vector<double> x, y;
    for (int i = 0; i < 60; ++i) {
        x.push_back(std::pow(10, -5 + i / 59.0));
        y.push_back(3.5 * std::pow(x.back(), -1.75));
    }
    const PowerFit f = weighted_power_fit(x, y);
    CHECK(f.exponent == doctest::Approx(-1.75).epsilon(1e-12));
    CHECK(f.constant == doctest::Approx(3.5).epsilon(1e-10));
    CHECK(f.rms < 1e-12);
}

TEST_CASE("boundary fit on synthetic profiles") {
    const BoundaryConstants c = boundary_constants(kSym);
    const Profile exact = [&](double r) {
        const double d = 1 - r;
        return std::array<double, 2>{c.A1 * std::pow(d, -2), c.B1 * std::pow(d, -2)};
    };
    const BoundaryExpansionFit f = fit_boundary_expansion(exact, kSym, 1, 1e-5);
    CHECK(f.u.exponent_error < 1e-10);
    CHECK(f.u.constant_error < 1e-10);
    CHECK(f.pass());
    // a first-order correction keeps the ratio bounded
    const Profile corr = [&](double r) {
        const double d = 1 - r;
        return std::array<double, 2>{c.A1 * std::pow(d, -2) * (1 + 0.7 * d), c.B1 * std::pow(d, -2) * (1 + 0.7 * d)};
    };
    const BoundaryExpansionFit g = fit_boundary_expansion(corr, kSym, 1, 1e-5);
    CHECK(g.correction_inner == doctest::Approx(0.7).epsilon(1e-3));
    CHECK(g.correction_bounded);
    // a wrong exponent fails
    const Profile wrong = [&](double r) {
        const double d = 1 - r;
        return std::array<double, 2>{c.A1 * std::pow(d, -2.1), c.B1 * std::pow(d, -2)};
    };
    CHECK_FALSE(fit_boundary_expansion(wrong, kSym, 1, 1e-5).u.pass);
}

TEST_CASE("boundary fit on a computed large solution") {
    const BlowupRun run = blowup_run(kSym, 1, 1);
    const BoundaryExpansionFit f = fit_boundary_expansion(run.trajectory, kSym, run.estimate.R_hat);
    CHECK(f.u.fitted_exponent == doctest::Approx(2).epsilon(0.01));
    CHECK(f.u.fitted_constant == doctest::Approx(6).epsilon(0.02));
    CHECK(f.pass());
    INFO("correction " << f.correction_inner << " " << f.correction_outer);
    CHECK(f.correction_bounded);

    // weighted case: the constant carries the R correction
    const ProblemParams w{4, 0.5, -0.5, 2, 3};
    const BlowupRun rw = blowup_run(w, 2, 1);
    const BoundaryExpansionFit fw = fit_boundary_expansion(rw.trajectory, w, rw.estimate.R_hat);
    INFO("u " << fw.u.fitted_exponent << " " << fw.u.fitted_constant << " / " << fw.u.predicted_constant
         << " v " << fw.v.fitted_exponent << " " << fw.v.fitted_constant << " / " << fw.v.predicted_constant
         << " corr " << fw.correction_inner << " " << fw.correction_outer << " " << fw.u.consistent << fw.v.consistent);
    CHECK(fw.pass());

    const RadialTrajectory short_run = integrate_regular(kSym, 1, 1, 0.5);
    CHECK_THROWS_AS(fit_boundary_expansion(short_run, kSym, 1.0), DomainError);
}

TEST_CASE("boundary fit on the explicit biharmonic solution") {
    const ProblemParams p = biharmonic_params(8, 3, 0);
    const Profile uv = [](double r) {
        const auto j = oracle::explicit_biharmonic_jet(8, r);
        return std::array<double, 2>{j.u, j.v};
    };
    const BoundaryExpansionFit f = fit_boundary_expansion(uv, p, 1, 1e-5);
    CHECK(f.u.fitted_exponent == doctest::Approx(2).epsilon(0.005));
    CHECK(f.u.fitted_constant * f.u.fitted_constant == doctest::Approx(120).epsilon(0.01));
}

TEST_CASE("origin classification on synthetic profiles") {
    const ProblemParams p{3, 0, 0, 1.2, 1.6};
    const Profile a0 = [](double r) { return std::array<double, 2>{2 / r * (1 + r), 3 / r}; };
    const OriginFit f = fit_origin_behavior(a0, p, 1e-8);
    CHECK(f.case_id == "A0");
    CHECK(f.alpha == doctest::Approx(2).epsilon(1e-6));
    CHECK(f.beta == doctest::Approx(3).epsilon(1e-12));
    const Profile reg = [](double r) { return std::array<double, 2>{1 + r * r, 2 + r * r}; };
    CHECK(fit_origin_behavior(reg, p, 1e-6).case_id == "regular");
    const Profile none = [](double r) { return std::array<double, 2>{std::pow(r, -0.5), 1.0}; };
    CHECK(fit_origin_behavior(none, p, 1e-6).case_id == "none");
    CHECK_THROWS_AS(fit_origin_behavior(reg, p, 1e-2), DomainError);
}

TEST_CASE("Keller-Osserman maxima") {
    const SingularConstants sc = singular_constants(kSym);
    const Profile star = [&](double r) { return std::array<double, 2>{sc.A_N / (r * r), sc.B_N / (r * r)}; };
    const KellerOssermanReport k = keller_osserman_check(star, kSym, 1e-6, 1);
    CHECK(k.max_u == doctest::Approx(2).epsilon(1e-12));
    CHECK(k.max_v == doctest::Approx(2).epsilon(1e-12));
    CHECK_FALSE(k.growing);
    const Profile reg = [](double) { return std::array<double, 2>{1.0, 1.0}; };
    const KellerOssermanReport kr = keller_osserman_check(reg, kSym, 1e-6, 1e-2);
    CHECK(kr.inner_u < 1e-10);
    CHECK(kr.r_at_max_u == doctest::Approx(1e-2));
    const Profile bad = [](double r) { return std::array<double, 2>{std::pow(r, -3), 1.0}; };
    CHECK(keller_osserman_check(bad, kSym, 1e-6, 1).growing);
}
