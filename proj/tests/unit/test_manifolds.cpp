#include <doctest.h>

#include "largesol/errors.hpp"
#include "largesol/manifolds.hpp"
#include "largesol/orbits.hpp"

#include <cmath>
#include <random>

using namespace largesol;
using L = FixedPointLabel;

namespace {
const ProblemParams kSym{3, 0, 0, 2, 2};

double dist(const Vec4& a, const Vec4& b) {
    double s = 0;
    for (int i = 0; i < 4; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}
}  // namespace

TEST_CASE("catalog coordinates") {
    CHECK(fixed_point_coords(kSym, L::M0) == Vec4{2, 2, -1, -1});
    CHECK(fixed_point_coords(kSym, L::N0) == Vec4{0, 0, 3, 3});
    CHECK(fixed_point_coords(kSym, L::A0) == Vec4{1, 1, 0, 0});
    CHECK(fixed_point_coords(kSym, L::R0) == Vec4{0, -2, 7, 3});
    const ProblemParams p2{2, 0, 0, 2, 2};
    CHECK(fixed_point_coords(p2, L::A0) == fixed_point_coords(p2, L::O));
    for (L l : kAllFixedPoints) CHECK(parse_fixed_point(to_string(l)) == l);
    CHECK(parse_fixed_point("m0") == L::M0);
    CHECK_THROWS_AS(parse_fixed_point("Z9"), DomainError);
}

TEST_CASE("every catalog point is an exact zero of the field") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> num(1, 40);
    for (int k = 0; k < 40; ++k) {
        const ProblemParams p{1 + num(rng) / 8.0, num(rng) / 16.0 - 1, num(rng) / 16.0 - 1, num(rng) / 8.0, num(rng) / 8.0};
        if (p.D() == 0) continue;
        const ExactParams q = *to_exact(p);
        for (L l : kAllFixedPoints) {
            const auto c = fixed_point_exact_coords(q, l);
            REQUIRE(c);
            for (const Rational& f : origin_field_exact(q, *c)) CHECK(f == 0);
            const Vec4 d = fixed_point_coords(p, l);
            double m = 0;
            for (double f : origin_field(p, d)) m = std::max(m, std::fabs(f));
            CHECK(m < 1e-12 * (1 + dist(d, Vec4{}) * dist(d, Vec4{})));
        }
    }
}

TEST_CASE("catalog flags") {
    const auto cat = fixed_point_catalog(kSym);
    REQUIRE(cat.size() == 16);
    for (const auto& r : cat) {
        if (r.label == L::I0 || r.label == L::J0 || r.label == L::K0 || r.label == L::L0) CHECK_FALSE(r.admissible);
        if (r.label == L::M0) {
            CHECK(r.in_region_R);
            CHECK(r.admissible);
        }
    }
    // P0 outside the region for (2+b)/(N-2) < mu < (N+b)/(N-2)
    const ProblemParams p{3, 0, 0, 2, 2.5};
    CHECK_FALSE(fixed_point(p, L::P0).in_region_R);
    CHECK(fixed_point(ProblemParams{3, 0, 0, 1, 4}, L::P0).in_region_R);
    // borderline mu = (N+b)/(N-2) makes A0 a limit case
    CHECK(fixed_point(ProblemParams{3, 0, 0, 1.5, 3}, L::A0).limit_case);
    CHECK_FALSE(fixed_point(kSym, L::R0).limit_case);
}

TEST_CASE("closed-form eigenvalue lists") {
    const Linearization a0 = linearization(kSym, L::A0);
    for (const auto& z : a0.eigenvalues) CHECK(std::abs(z - 1.0) < 1e-6);
    const Linearization r0 = linearization(kSym, L::R0);
    CHECK(r0.closed_form_mismatch < 1e-12);
    CHECK(r0.eigenvalues[3].real() == doctest::Approx(6));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0.3, 4);
    for (int k = 0; k < 30; ++k) {
        const ProblemParams p{2.2 + U(rng), U(rng) - 1, U(rng) - 1, U(rng), U(rng)};
        if (std::fabs(p.D()) < 1e-3) continue;
        for (L l : {L::O, L::N0, L::R0, L::S0, L::G0, L::H0, L::P0, L::Q0}) {
            const Linearization lin = linearization(p, l);
            REQUIRE(lin.closed_form);
            CHECK(lin.closed_form_mismatch < 1e-8);
            // eigenvector residual
            for (int j = 0; j < 4; ++j) {
                double res = 0;
                for (int r = 0; r < 4; ++r) {
                    std::complex<double> s = 0;
                    for (int c = 0; c < 4; ++c) s += lin.jacobian[r][c] * lin.eigenvectors[j][c];
                    res = std::max(res, std::abs(s - lin.eigenvalues[j] * lin.eigenvectors[j][r]));
                }
                CHECK(res < 1e-6);
            }
        }
    }
}

TEST_CASE("M0 spectrum") {
    const M0Spectrum s = m0_spectrum(kSym);
    CHECK(s.lambda3 == doctest::Approx((3 - std::sqrt(17.0)) / 2).epsilon(1e-13));
    CHECK(s.lambda4 == doctest::Approx((3 + std::sqrt(17.0)) / 2).epsilon(1e-13));
    CHECK(std::abs(s.roots[0] - std::complex<double>(1.5, -std::sqrt(15.0) / 2)) < 1e-12);
    CHECK(std::abs(s.roots[1] - std::complex<double>(1.5, std::sqrt(15.0) / 2)) < 1e-12);
    CHECK(s.structure_holds());
    CHECK(s.pair_complex);
    CHECK(s.E == -6);
    CHECK(s.H == 12);

    const CVec4 sym = m0_spectrum_symmetric(kSym);
    CHECK(std::abs(sym[2].real() - s.lambda3) < 1e-12);

    // N = 1: explicit roots and the link with the planar system
    for (auto [d, m] : {std::pair{3.0, 3.0}, std::pair{1.5, 4.0}, std::pair{6.0, 0.5}}) {
        const ProblemParams p{1, 0, 0, d, m};
        const M0Spectrum q = m0_spectrum(p);
        const CVec4 ex = m0_spectrum_line(d, m);
        CHECK(q.lambda3 == doctest::Approx(-1).epsilon(1e-12));
        CHECK(q.lambda4 == doctest::Approx(ex[3].real()).epsilon(1e-12));
        CHECK(std::abs(q.roots[0] - ex[0]) + std::abs(q.roots[1] - ex[1]) < 1e-9);
        const auto ell = reduced_m0_spectrum(d, m);
        const double Z0 = std::fabs(q.M0[2]);
        // l = -lambda / |Z0|: compare as unordered pairs
        const std::complex<double> a0 = ell[0] * Z0, a1 = ell[1] * Z0;
        const double direct = std::abs(a0 + q.roots[0]) + std::abs(a1 + q.roots[1]);
        const double crossed = std::abs(a0 + q.roots[1]) + std::abs(a1 + q.roots[0]);
        CHECK(std::min(direct, crossed) < 1e-9);
    }
    CHECK_THROWS_AS(m0_spectrum(ProblemParams{8, 0, 0, 2, 2}), DomainError);
}

TEST_CASE("M0 structure on a parameter grid") {
    int checked = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const ProblemParams p{3, 0, 0, 1.2 + 2.8 * i / 9, 1.2 + 2.8 * j / 9};
            if (!power_solution_exists(p)) continue;
            ++checked;
            CHECK_NOTHROW(m0_spectrum(p));
        }
    CHECK(checked > 10);
}

TEST_CASE("limit classification") {
    const auto cat = fixed_point_catalog(kSym);
    const std::vector<double> t{0, 1, 2};
    const Vec4 M{2, 2, -1, -1};
    const LimitClassification c = classify_limit(t, {M, M, M}, cat);
    REQUIRE(c.label);
    CHECK(*c.label == L::M0);
    CHECK(c.distance == 0);
    const LimitClassification u = classify_limit(t, {Vec4{1e9, 0, 0, 0}, M, M}, cat);
    CHECK(u.status == "unbounded");
    // a trajectory on the hyperplane X = 0 approaching K0 = (0, 0, 3, 0) as t -> -infinity
    const PhaseLeg leg = integrate_origin_field(kSym, {0, 0, 3, 1e-3}, 0, -30, {});
    std::vector<double> tt(leg.t.rbegin(), leg.t.rend());
    std::vector<Vec4> PP(leg.P.rbegin(), leg.P.rend());
    const LimitClassification k = classify_limit(tt, PP, cat);
    REQUIRE(k.label);
    CHECK(*k.label == L::K0);
    CHECK_FALSE(k.admissible);
}

TEST_CASE("launch from R0 gives a regular solution") {
    const RegularLaunchReport rep = regular_launch(kSym);
    for (const auto& c : rep.claims) {
        INFO(c.id << " " << c.value);
        CHECK(c.pass);
    }
    CHECK(rep.launch.direction[0] < 0);
    CHECK(rep.launch.stop == PhaseStop::Escaped);
    const RegularLaunchReport s0 = regular_launch(ProblemParams{4, 0.5, -0.5, 1.5, 2.5}, L::S0);
    CHECK(all_pass(s0.claims));
}

TEST_CASE("launch from A0 into the negative Z octant") {
    // N + a - (N-2) delta = 1.8 and N + b - (N-2) mu = 1.4 keep the spectrum semisimple
    const ProblemParams p{3, 0, 0, 1.2, 1.6};
    const Linearization lin = linearization(p, L::A0);
    const int idx = eigen_index_near(lin, 1.8);
    LaunchOptions opt;
    opt.sign = lin.eigenvectors[idx][2].real() > 0 ? -1 : 1;
    opt.t_span = 2;
    const LaunchResult res = launch(p, L::A0, idx, opt);
    CHECK(res.rate_ok);
    CHECK(res.measured_rate == doctest::Approx(1.8).epsilon(0.05));
    CHECK(res.direction[2] < 0);
}

TEST_CASE("P0 launch satisfies the beta(alpha) relation") {
    const ProblemParams p{3, 0, 0, 0.8, 4};
    const Linearization lin = linearization(p, L::P0);
    const double lam3 = p.N + p.a - p.delta * ((p.N - 2) * p.mu - 2 - p.b);
    const int idx = eigen_index_near(lin, lam3);
    LaunchOptions opt;
    opt.sign = lin.eigenvectors[idx][2].real() > 0 ? -1 : 1;
    opt.t_span = 1;
    const LaunchResult res = launch(p, L::P0, idx, opt);
    REQUIRE(res.rate_ok);
    // continue the approach towards P0 to reach small r
    const PhaseLeg back = integrate_origin_field(p, res.trajectory.P.front(), res.trajectory.t.front(), -40,
                                                 PhaseIntegrationOptions{1e-12, 0, 1, 1e8, true, 1e-12});
    const PhaseTrajectory tr = join_legs(p, back, {});
    const Profile uv = [&](double r) {
        const RadialState s = from_phase_origin(p, PhasePoint::from(tr.at(std::log(r)), Chart::Origin, 0), r);
        return std::array<double, 2>{s.u, s.v};
    };
    const OriginFit fit = fit_origin_behavior(uv, p, std::exp(tr.t.front()));
    CHECK(fit.case_id == "P0");
    REQUIRE(fit.relation_error);
    CHECK(*fit.relation_error < 0.02);
}

TEST_CASE("connecting orbit, N = 3") {
    const ConnectingOrbitReport rep = connecting_orbit(kSym);
    for (const auto& c : rep.claims) {
        INFO(c.id << " value " << c.value);
        CHECK(c.pass);
    }
    REQUIRE(rep.alpha_limit.label);
    CHECK(*rep.alpha_limit.label == L::A0);
    CHECK(rep.alpha_limit.distance < 1e-3);
    CHECK(rep.origin.case_id == "A0");
    CHECK(rep.origin.alpha > 0);
    CHECK(rep.origin.beta == doctest::Approx(rep.origin.alpha).epsilon(1e-6));
    const auto mid = rep.solution(rep.trajectory.t.size() / 2);
    CHECK(mid[1] > 0);
}

TEST_CASE("connecting orbit, other regimes") {
    SUBCASE("N = 2 goes to O with logarithmic behaviour") {
        const ConnectingOrbitReport rep = connecting_orbit(ProblemParams{2, 0, 0, 2, 2});
        CHECK(rep.alpha_limit.label == L::O);
        CHECK(rep.origin.case_id == "O_log");
    }
    SUBCASE("mu above (N+b)/(N-2) ends at P0") {
        const ConnectingOrbitReport rep = connecting_orbit(ProblemParams{3, 0, 0, 0.8, 4});
        for (const auto& c : rep.claims) {
            INFO(c.id << " value " << c.value);
            CHECK(c.pass);
        }
        CHECK(rep.alpha_limit.label == L::P0);
        REQUIRE(rep.origin.relation_error);
        CHECK(*rep.origin.relation_error < 0.02);
    }
    SUBCASE("delta above (N+a)/(N-2) is handled by exchanging the roles") {
        const ConnectingOrbitReport rep = connecting_orbit(ProblemParams{3, 0, 0, 4, 0.8});
        CHECK(rep.swapped);
        CHECK(rep.alpha_limit.label == L::Q0);
        CHECK(rep.origin.case_id == "Q0");
        CHECK(rep.pass());
    }
}
