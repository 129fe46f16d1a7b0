#pragma once

// Radial form of the system
//     u'' + (N-1)/r u' = r^a v^delta
//     v'' + (N-1)/r v' = r^b u^mu
// and of the biharmonic reduction (delta = 1, a = 0, |u|^mu with sign changes allowed).

#include "largesol/dop853.hpp"
#include "largesol/params.hpp"

#include <array>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace largesol {

enum class Nonlinearity {
    PositiveCone,  // r^a v^delta, r^b u^mu on u, v >= 0
    Biharmonic,    // v, r^b |u|^mu
};

struct RadialState {
    double r = 0;
    double u = 0, up = 0;
    double v = 0, vp = 0;
};

/// A state together with second derivatives.
struct RadialJet {
    double r = 0;
    double u = 0, up = 0, upp = 0;
    double v = 0, vp = 0, vpp = 0;
};

struct RadialSample {
    RadialState state;
    double err = 0;  // scaled local error estimate of the step ending here
};

struct ThresholdCrossing {
    double threshold = 0;
    RadialState state;
};

struct IntegratorConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double max_step = std::numeric_limits<double>::infinity();
    std::vector<double> blowup_thresholds = {1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9};
    double series_start_radius = 0;  // 0 chooses it automatically
    double max_radius = 1e6;         // outward blow-up searches give up here
    long max_steps = 2'000'000;
    double negativity_tol = 1e-10;   // relative to the running scale of |u|, |v|
    double blowup_rel_tol = 1e-6;    // required agreement of the extrapolation trail

    void validate() const;
};

enum class Termination { ReachedEnd, BlowupEvent, StepUnderflow, MaxSteps };

std::string to_string(Termination t);

class RadialTrajectory {
public:
    ProblemParams params;
    Nonlinearity mode = Nonlinearity::PositiveCone;
    std::optional<std::array<double, 2>> initial_data;  // (u0, v0) for regular solutions
    double series_radius = 0;                            // 0 unless started from the series
    Termination termination = Termination::ReachedEnd;
    std::vector<RadialSample> samples;
    std::vector<ThresholdCrossing> crossings;
    DenseSolution<4> dense;
    long rhs_evaluations = 0;

    double r_first() const { return samples.front().state.r; }
    double r_last() const { return samples.back().state.r; }
    const RadialState& last() const { return samples.back().state; }
    bool outward() const { return r_last() > r_first(); }

    /// Dense-output state at r, inside the integrated range.
    RadialState at(double r) const;
    /// State at r with second derivatives taken from the equations.
    RadialJet jet_at(double r) const;
    std::vector<RadialJet> jets() const;
};

ProblemParams biharmonic_params(double N, double mu, double b);

/// Right-hand side for y = (u, u', v, v').
Vec<4> radial_rhs(const ProblemParams& p, Nonlinearity mode, double r, const Vec<4>& y);
RadialJet make_jet(const ProblemParams& p, Nonlinearity mode, const RadialState& s);

/// Residuals of the two equations for a state with given second derivatives.
std::array<double, 2> ode_defect(const ProblemParams& p, const RadialJet& j,
                                 Nonlinearity mode = Nonlinearity::PositiveCone);
/// Same residuals divided by the sum of the magnitudes of the terms.
std::array<double, 2> ode_relative_defect(const ProblemParams& p, const RadialJet& j,
                                          Nonlinearity mode = Nonlinearity::PositiveCone);

struct SeriesStart {
    RadialState state;
    double eps = 0;
    double picard_change = 0;  // largest scaled change between the second and third iterate
};

/// Two Picard iterations of the integral form at r = eps. Throws ContractionError
/// when a third iteration would still move the state by more than the tolerances.
RadialState series_start(const ProblemParams& p, double u0, double v0, double eps,
                         const IntegratorConfig& cfg = {},
                         Nonlinearity mode = Nonlinearity::PositiveCone);

/// As series_start, shrinking eps by 4 until the contraction test passes.
SeriesStart auto_series_start(const ProblemParams& p, double u0, double v0,
                              const IntegratorConfig& cfg = {},
                              Nonlinearity mode = Nonlinearity::PositiveCone);

/// Integrates from `start` to r_end (either direction). Outward runs stop once u has
/// crossed every blow-up threshold.
RadialTrajectory integrate(const ProblemParams& p, const RadialState& start, double r_end,
                           const IntegratorConfig& cfg = {},
                           Nonlinearity mode = Nonlinearity::PositiveCone);

/// Regular solution with u(0) = u0, v(0) = v0, u'(0) = v'(0) = 0.
RadialTrajectory integrate_regular(const ProblemParams& p, double u0, double v0, double r_end,
                                   const IntegratorConfig& cfg = {},
                                   Nonlinearity mode = Nonlinearity::PositiveCone);

RadialTrajectory integrate_biharmonic(double N, double mu, double b, double u0, double v0,
                                      const IntegratorConfig& cfg = {},
                                      double r_end = std::numeric_limits<double>::infinity());

struct TrailEntry {
    double threshold = 0;
    double r = 0;
    double R_leading = 0;  // r + (A/u)^(1/gamma)
    double R_u = 0;        // refined estimate from (u, u')
    double R_v = 0;        // refined estimate from (v, v')
};

struct BlowupEstimate {
    double R_hat = 0;
    double err = 0;
    std::vector<TrailEntry> trail;
};

struct BlowupRun {
    RadialTrajectory trajectory;
    BlowupEstimate estimate;
};

/// Extrapolates the blow-up radius from the threshold crossings of a trajectory.
BlowupEstimate estimate_from_trajectory(const RadialTrajectory& traj,
                                        const IntegratorConfig& cfg = {});

BlowupRun blowup_run(const ProblemParams& p, double u0, double v0,
                     const IntegratorConfig& cfg = {},
                     Nonlinearity mode = Nonlinearity::PositiveCone);

BlowupEstimate estimate_blowup_radius(const ProblemParams& p, double u0, double v0,
                                      const IntegratorConfig& cfg = {});

/// Kelvin image ubar(rho) = rho^(2-N) u(1/rho), same for v; the grid comes out reversed.
std::vector<RadialJet> kelvin_transform(const std::vector<RadialJet>& jets, double N);
std::vector<RadialJet> kelvin_transform(const RadialTrajectory& traj);

}  // namespace largesol
