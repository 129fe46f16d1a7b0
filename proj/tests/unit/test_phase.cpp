#include <doctest.h>

#include "largesol/errors.hpp"
#include "largesol/phase.hpp"

#include <cmath>
#include <memory>
#include <random>

using namespace largesol;

namespace {
const ProblemParams kSym{3, 0, 0, 2, 2};

double max_abs(const Vec4& v) {
    double m = 0;
    for (double c : v) m = std::max(m, std::fabs(c));
    return m;
}
}  // namespace

TEST_CASE("psi and its inverse") {
    for (double N : {1.0, 2.0, 3.0, 5.5}) CHECK(psi(N, 0) == 1);
    CHECK(psi(1, 0.3) == doctest::Approx(0.7));
    CHECK(psi_inv(3, 0.5) == doctest::Approx(1.0));
    CHECK(psi(2, 1.5) == doctest::Approx(std::exp(-1.5)));
    for (double N : {1.0, 2.0, 3.0, 4.5})
        for (double r : {0.01, 0.3, 0.9}) CHECK(psi(N, psi_inv(N, r)) == doctest::Approx(r).epsilon(1e-14));
    // dr/ds = -r^(N-1) against a centred difference
    const double s = 0.7, h = 1e-5;
    CHECK(psi_derivative(4, s) == doctest::Approx((psi(4, s + h) - psi(4, s - h)) / (2 * h)).epsilon(1e-8));
    CHECK_THROWS_AS(psi(3, -2), DomainError);
    CHECK_THROWS_AS(psi_inv(3, 0), DomainError);
}

TEST_CASE("origin chart: particular solution sits at M0") {
    for (double r : {0.01, 1.0, 37.0}) {
        const RadialState s{r, 2 / (r * r), -4 / (r * r * r), 2 / (r * r), -4 / (r * r * r)};
        const PhasePoint P = to_phase_origin(kSym, s);
        CHECK(P.X == doctest::Approx(2));
        CHECK(P.Y == doctest::Approx(2));
        CHECK(P.Z == doctest::Approx(-1));
        CHECK(P.W == doctest::Approx(-1));
        CHECK(max_abs(origin_field(kSym, P.vec())) < 1e-12);
        const RadialState back = from_phase_origin(kSym, P, r);
        CHECK(back.u == doctest::Approx(s.u).epsilon(1e-12));
        CHECK(back.v == doctest::Approx(s.v).epsilon(1e-12));
    }
    CHECK_THROWS_AS(to_phase_origin(kSym, RadialState{1, 1, 0, 1, 1}), DomainError);
    CHECK_THROWS_AS(from_phase_origin(kSym, PhasePoint{1, 1, 1, -1}, 1), DomainError);
}

TEST_CASE("origin field hand values and invariant hyperplanes") {
    const Vec4 f = origin_field(kSym, {1, 1, -1, -1});
    CHECK(f[0] == -1);
    CHECK(f[1] == -1);
    CHECK(f[2] == -2);
    CHECK(f[3] == -2);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-3, 3);
    const ProblemParams p{4, 0.5, -1, 1.2, 1.3};
    for (int k = 0; k < 50; ++k) {
        const Vec4 P{U(rng), U(rng), U(rng), U(rng)};
        for (int i = 0; i < 4; ++i) {
            Vec4 Q = P;
            Q[i] = 0;
            CHECK(origin_field(p, Q)[i] == 0);
        }
        // Jacobian against centred differences
        const Mat4 J = origin_jacobian(p, P);
        for (int j = 0; j < 4; ++j) {
            Vec4 a = P, b = P;
            a[j] += 1e-6;
            b[j] -= 1e-6;
            const Vec4 fa = origin_field(p, a), fb = origin_field(p, b);
            for (int i = 0; i < 4; ++i) CHECK(J[i][j] == doctest::Approx((fa[i] - fb[i]) / 2e-6).epsilon(1e-7));
        }
    }
}

TEST_CASE("origin chart round trip on random admissible points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.1, 3);
    const ProblemParams p{5, 1, 0.5, 1.5, 2.5};
    for (int k = 0; k < 100; ++k) {
        const PhasePoint P{U(rng), -U(rng), -U(rng), U(rng)};
        const double r = U(rng);
        const RadialState s = from_phase_origin(p, P, r);
        CHECK(s.up == doctest::Approx(-P.X * s.u / r));
        const PhasePoint Q = to_phase_origin(p, s);
        CHECK(max_abs({Q.X - P.X, Q.Y - P.Y, Q.Z - P.Z, Q.W - P.W}) < 1e-12 * (1 + max_abs(P.vec())));
        // scaling: evaluating at 2r multiplies u by 2^-gamma_ab
        const RadialState s2 = from_phase_origin(p, P, 2 * r);
        CHECK(s2.u / s.u == doctest::Approx(std::pow(2, -derive_exponents(p).gamma_ab)).epsilon(1e-12));
    }
}

TEST_CASE("boundary field coefficients and fixed point") {
    const ProblemParams p2{2, 0.5, 0, 2, 2};
    for (double t : {-3.0, -1.0, 0.0}) CHECK(alpha_coefficient(p2, t) == doctest::Approx(2.5 * std::exp(t)));
    const ProblemParams line{1, 0, 0, 3, 3};
    CHECK(alpha_coefficient(line, -0.4) == 0);
    CHECK(beta_coefficient(line, 0.2) == 0);
    const Vec4 M = boundary_fixed_point(kSym);
    CHECK(M == Vec4{2, 2, -3, -3});
    CHECK(max_abs(frozen_boundary_field(kSym, M)) == 0);
    CHECK(varpi(kSym, M) == 0);
    CHECK(varpi(kSym, {0, 0, 0, 0}) == 0);
    // frozen limit: difference decays like e^t
    const Vec4 P{1.5, 2.5, -2, -3.5};
    for (double t : {-10.0, -20.0}) {
        Vec4 d;
        const Vec4 a = boundary_field(kSym, P, t), b = frozen_boundary_field(kSym, P);
        for (int i = 0; i < 4; ++i) d[i] = a[i] - b[i];
        CHECK(max_abs(d) < 20 * std::exp(t));
    }
}

TEST_CASE("boundary chart round trip") {
    const ProblemParams p{4, 0.5, -1, 1.2, 1.3};
    const double R = 1.7;
    const RadialState s{1.1, 3.0, 2.0, 5.0, 7.0};
    const PhasePoint P = to_phase_boundary(p, s, R);
    CHECK(P.X > 0);
    CHECK(P.Z < 0);
    const RadialState back = from_phase_boundary(p, P, R);
    CHECK(back.r == doctest::Approx(s.r).epsilon(1e-13));
    CHECK(back.u == doctest::Approx(s.u).epsilon(1e-12));
    CHECK(back.up == doctest::Approx(s.up).epsilon(1e-12));
    CHECK(back.v == doctest::Approx(s.v).epsilon(1e-12));
    CHECK(back.vp == doctest::Approx(s.vp).epsilon(1e-12));
}

TEST_CASE("H derivative identity along a large solution") {
    const ProblemParams p{4, 0.5, 0.25, 2, 1.5};
    auto run = std::make_shared<BlowupRun>(blowup_run(p, 1, 0.7));
    const RadialTrajectory& tr = run->trajectory;
    const double R = run->estimate.R_hat;
    for (double frac : {0.3, 0.6, 0.9}) {
        const double r = frac * tr.r_last();
        for (auto [sg, th] : {std::pair{0.0, 0.0}, std::pair{1.5, -0.5}, std::pair{-2.0, 3.0}}) {
            const double s0 = psi_inv(p.N, r / R), h = 1e-4 * s0;
            auto H_at = [&](double s) { return H_sigma_theta(p, sg, th, boundary_jet(p, tr.at(R * psi(p.N, s)), R)); };
            const double fd = (H_at(s0 + h) - H_at(s0 - h)) / (2 * h);
            const double an = H_sigma_theta_derivative(p, sg, th, boundary_jet(p, tr.at(r), R));
            CHECK(an == doctest::Approx(fd).epsilon(1e-6));
        }
    }
    // sign claims for large |sigma|, |theta|
    for (double frac : {0.5, 0.9, 0.999}) {
        const BoundaryJet j = boundary_jet(p, tr.at(frac * tr.r_last()), R);
        CHECK(H_sigma_theta_derivative(p, 50, 50, j) < 0);
        CHECK(H_sigma_theta_derivative(p, -50, -50, j) > 0);
    }
}

TEST_CASE("line first integral is conserved") {
    const ProblemParams p{1, 0, 0, 3, 3};
    const BlowupRun run = blowup_run(p, 1, 0.8);
    const FirstIntegralDrift d = first_integral_drift(run.trajectory);
    CHECK(d.max_scaled_drift < 1e-10);
    CHECK(d.max_drift_vs_initial < 1e-7);
    CHECK_THROWS_AS(first_integral_drift(blowup_run(kSym, 1, 1).trajectory), DomainError);
}

TEST_CASE("planar system fixed points and spectrum") {
    const Reduced2FixedPoints f = reduced2_fixed_points(2, 2);
    CHECK(f.m0[0] == doctest::Approx(2.0 / 3));
    CHECK(f.m0[1] == doctest::Approx(2.0 / 3));
    for (const Vec2& q : {f.O, f.j0, f.l0, f.m0}) {
        const Vec2 g = reduced2_field(2, 2, q);
        CHECK(std::fabs(g[0]) + std::fabs(g[1]) < 1e-15);
    }
    const auto l = reduced_m0_spectrum(2, 2);
    CHECK(std::fabs(l[0] - std::complex<double>(-5.0 / 6, -std::sqrt(47.0) / 6)) < 1e-12);
    CHECK(std::fabs(l[1] - std::complex<double>(-5.0 / 6, std::sqrt(47.0) / 6)) < 1e-12);
    for (double d : {0.5, 1.0, 2.0, 4.0})
        for (double m : {2.5, 3.0, 5.0}) {
            const auto a = reduced_m0_spectrum(d, m), b = reduced_m0_jacobian_spectrum(d, m);
            CHECK(std::fabs(a[0] - b[0]) + std::fabs(a[1] - b[1]) < 1e-10);
            CHECK(a[0].real() < 0);
            CHECK(a[1].real() < 0);
        }
}

TEST_CASE("Dulac certificate") {
    const DulacCertificate c = dulac_certificate(2, 2);
    REQUIRE(c.M_exact);
    CHECK(to_string(*c.q_exact) == "10/9");
    CHECK(to_string(*c.p_exact) == "-7/3");
    CHECK(to_string(*c.M_exact) == "-5/3");
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.2, 3);
    for (int k = 0; k < 20; ++k) {
        const Vec2 xy{U(rng), 1.0 / 3 + U(rng)};
        CHECK(dulac_divergence_ratio(2, 2, c.p, c.q, xy) == doctest::Approx(c.M).epsilon(1e-13));
        // finite-difference divergence of B (F, G)
        const double h = 1e-6;
        auto BF = [&](Vec2 z, int i) { return dulac_multiplier(2, c.p, c.q, z) * reduced2_field(2, 2, z)[i]; };
        const double div = (BF({xy[0] + h, xy[1]}, 0) - BF({xy[0] - h, xy[1]}, 0)) / (2 * h) +
                           (BF({xy[0], xy[1] + h}, 1) - BF({xy[0], xy[1] - h}, 1)) / (2 * h);
        CHECK(div / dulac_multiplier(2, c.p, c.q, xy) == doctest::Approx(c.M).epsilon(1e-7));
    }
    CHECK_THROWS_AS(dulac_certificate(0.5, 1), DomainError);
}

TEST_CASE("boundary trajectory of a large solution and its planar reduction") {
    auto run = std::make_shared<BlowupRun>(blowup_run(kSym, 1, 1));
    auto tr = std::shared_ptr<const RadialTrajectory>(run, &run->trajectory);
    const BoundaryTrajectory bt = to_boundary_trajectory(tr, run->estimate.R_hat, 300);
    for (const auto& s : bt.samples) {
        CHECK(s.P[0] > 0);
        CHECK(s.P[1] > 0);
        CHECK(s.P[2] < 0);
        CHECK(s.P[3] < 0);
    }
    const double k = measured_bound_k(bt, 0);
    CHECK(k < 10);
    const Vec4 M = boundary_fixed_point(kSym);
    const Vec4 first = bt.samples.front().P;
    CHECK(max_abs({first[0] - M[0], first[1] - M[1], first[2] - M[2], first[3] - M[3]}) < 1e-3);

    const ReducedPath path = reduce_to_2d(bt);
    REQUIRE(path.points.size() == bt.samples.size());
    for (std::size_t i = 1; i < path.points.size(); ++i) CHECK(path.points[i].tau > path.points[i - 1].tau);
    const auto& end = path.points.back();
    CHECK(end.x == doctest::Approx(2.0 / 3).epsilon(1e-3));
    CHECK(end.y == doctest::Approx(2.0 / 3).epsilon(1e-3));
    // tau advances at |Z0| = 1 + gamma per unit t near the boundary
    const auto& pre = path.points[path.points.size() - 2];
    CHECK((end.tau - pre.tau) / (pre.t - end.t) == doctest::Approx(3).epsilon(1e-3));
    CHECK(std::fabs(end.residual_x) < 1e-3);
    CHECK(std::fabs(path.points.front().residual_x) > std::fabs(end.residual_x));
}

TEST_CASE("reduced trajectories converge to m0") {
    const Reduced2Run run = integrate_reduced2(2, 2, {1.5, 2.0}, 200);
    CHECK(run.final_distance < 1e-10);
}

TEST_CASE("origin field integration stops on region exit") {
    PhaseIntegrationOptions opt;
    const PhaseLeg leg = integrate_origin_field(kSym, {2.1, 2, -1, -1}, 0, 50, opt);
    CHECK(leg.t.size() > 2);
    CHECK(leg.stop != PhaseStop::ReachedEnd);
    const PhaseLeg back = integrate_origin_field(kSym, {2.0, 2.0, -1.0, -1.0}, 0, -5, opt);
    CHECK(back.stop == PhaseStop::ReachedEnd);
    CHECK(back.t.back() == doctest::Approx(-5));
    const PhaseTrajectory tr = join_legs(kSym, back, leg);
    for (std::size_t i = 1; i < tr.t.size(); ++i) CHECK(tr.t[i] > tr.t[i - 1]);
    CHECK(max_abs(tr.at(-2.5)) == doctest::Approx(2));
}
