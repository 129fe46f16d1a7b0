#pragma once

// Trajectory pipelines built on the fixed-point catalog: the regular solutions leaving
// R0 / S0 and the global solution connecting the origin behaviour to M0.

#include "largesol/asymptotics.hpp"
#include "largesol/manifolds.hpp"

#include <optional>
#include <string>
#include <vector>

namespace largesol {

struct Claim {
    std::string id;
    std::string description;
    double value = 0;
    double threshold = 0;
    bool pass = false;
};

bool all_pass(const std::vector<Claim>& claims);

// ---- regular solutions from R0 / S0 ----------------------------------------------------------------

struct RegularLaunchReport {
    FixedPointLabel label = FixedPointLabel::R0;
    LaunchResult launch;
    double data = 0;             // u0 (R0) or v0 (S0) read off the trajectory
    double limit_ratio = 0;      // v / r^(2+b) divided by u0^mu / ((N+b)(2+b)), or the S0 analogue
    double cross_validation = 0; // max relative gap to the direct integrator
    double r_lo = 0, r_hi = 0;   // overlap used for the comparison
    std::vector<Claim> claims;
};

/// Launches the one-dimensional unstable manifold of R0 (or S0) into the admissible side,
/// reads off the initial datum and compares with integrate_regular.
RegularLaunchReport regular_launch(const ProblemParams& p, FixedPointLabel label = FixedPointLabel::R0,
                                   const IntegratorConfig& cfg = {});

// ---- connecting orbit -------------------------------------------------------------------------------

struct ConnectingOrbitOptions {
    double eps = 1e-7;          // offset from M0 along the stable eigenvector
    double t_backward = 0;      // 0 chooses it from the spectrum at the expected limit
    double t_forward = 0;       // 0: 8 / lambda4
    double limit_tol = 1e-3;
    double fit_tol = 0.01;
};

struct ConnectingOrbitReport {
    ProblemParams params;
    bool swapped = false;   // computed with the roles of (u, delta, a) and (v, mu, b) exchanged
    ProblemParams internal; // parameters of the computation
    double lambda3 = 0;
    Vec4 eigenvector{};     // in the original orientation
    PhaseTrajectory trajectory;  // in the internal orientation; use point()
    double t_shift = 0;          // sample t corresponds to r = exp(t - t_shift)
    std::array<int, 4> wrong_steps{};  // discrete differences with the wrong sign, per coordinate
    bool above_N_minus_2 = true;
    LimitClassification alpha_limit;    // label in the original orientation
    std::optional<FixedPointLabel> expected_alpha_limit;
    OriginFit origin;                   // alpha, beta in the original orientation
    double forward_u = 0, forward_v = 0; // r^gamma_ab u / A_N and r^xi_ab v / B_N at the forward end
    std::vector<Claim> claims;

    Vec4 point(std::size_t i) const;
    /// (r, u, v) reconstructed at sample i, original orientation.
    std::array<double, 3> solution(std::size_t i) const;
    bool pass() const { return all_pass(claims); }
};

ConnectingOrbitReport connecting_orbit(const ProblemParams& p, const ConnectingOrbitOptions& opt = {});

}  // namespace largesol
