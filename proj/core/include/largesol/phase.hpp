#pragma once

// Two changes of variables that turn the radial system into quadratic systems in (X, Y, Z, W).
//
// Origin chart, t = ln r:
//     X = -r u'/u,  Y = -r v'/v,  Z = r^(1+a) v^delta / u',  W = r^(1+b) u^mu / v'
// Boundary chart (blow-up scaled to R = 1), s = psi^-1(r), t = ln s:
//     X = -s u_s/u, Y = -s v_s/v, Z = s F v^delta / u_s, W = s G u^mu / v_s
// with u_s = -r^(N-1) u', F = r^(2N-2+a), G = r^(2N-2+b).

#include "largesol/dop853.hpp"
#include "largesol/params.hpp"
#include "largesol/radial_ode.hpp"

#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace largesol {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;
using Vec2 = std::array<double, 2>;

enum class Chart { Origin, Boundary };

struct PhasePoint {
    double X = 0, Y = 0, Z = 0, W = 0;
    Chart chart = Chart::Origin;
    double t = 0;

    Vec4 vec() const { return {X, Y, Z, W}; }
    static PhasePoint from(const Vec4& v, Chart c, double t) { return {v[0], v[1], v[2], v[3], c, t}; }
};

/// XZ <= 0 and YW <= 0.
bool in_region(const Vec4& P, double tol = 0.0);

// ---- boundary variable -------------------------------------------------------------------

/// r = (1 + (N-2)s)^(-1/(N-2)), or e^-s when N = 2.
double psi(double N, double s);
/// s = (r^(2-N) - 1)/(N-2), or -ln r when N = 2.
double psi_inv(double N, double r);
/// dr/ds = -r^(N-1).
double psi_derivative(double N, double s);

// ---- origin chart ----------------------------------------------------------------------------

PhasePoint to_phase_origin(const ProblemParams& p, const RadialState& s);
/// Recovers (u, v, u', v') at radius r.
RadialState from_phase_origin(const ProblemParams& p, const PhasePoint& P, double r);

Vec4 origin_field(const ProblemParams& p, const Vec4& P);
Mat4 origin_jacobian(const ProblemParams& p, const Vec4& P);

// ---- boundary chart --------------------------------------------------------------------------

double alpha_coefficient(const ProblemParams& p, double t);
double beta_coefficient(const ProblemParams& p, double t);
Vec4 boundary_field(const ProblemParams& p, const Vec4& P, double t);
/// Limit of boundary_field as t -> -infinity.
Vec4 frozen_boundary_field(const ProblemParams& p, const Vec4& P);
/// Fixed point (gamma, xi, -1-gamma, -1-xi) of the frozen field.
Vec4 boundary_fixed_point(const ProblemParams& p);

/// Boundary-chart point of a state of a solution blowing up at R.
PhasePoint to_phase_boundary(const ProblemParams& p, const RadialState& s, double R);
/// Inverse of to_phase_boundary.
RadialState from_phase_boundary(const ProblemParams& p, const PhasePoint& P, double R);

/// (mu+1)(XY + XZ/(delta+1) + YW/(mu+1)).
double varpi(const ProblemParams& p, const Vec4& P);

/// Boundary-variable data of a solution scaled to R = 1.
struct BoundaryJet {
    double s = 0, u = 0, us = 0, v = 0, vs = 0;
};
BoundaryJet boundary_jet(const ProblemParams& p, const RadialState& s, double R);

/// H = r^(2-N) (u_s v_s - F v^(delta+1)/(delta+1) - G u^(mu+1)/(mu+1)) - (sigma v u_s + theta u v_s).
double H_sigma_theta(const ProblemParams& p, double sigma, double theta, const BoundaryJet& j);
/// dH/ds from the closed-form identity.
double H_sigma_theta_derivative(const ProblemParams& p, double sigma, double theta, const BoundaryJet& j);

/// u'v' - u^(mu+1)/(mu+1) - v^(delta+1)/(delta+1); conserved when N = 1 and a = b = 0.
double line_first_integral(const ProblemParams& p, const RadialState& s);

struct FirstIntegralDrift {
    double initial = 0;
    double max_scaled_drift = 0;  // |C - C0| / (|u'v'| + u^(mu+1)/(mu+1) + v^(delta+1)/(delta+1))
    double max_drift_vs_initial = 0;  // |C - C0| / |C0| while u stays below 10
    double r_at_max = 0;
};
FirstIntegralDrift first_integral_drift(const RadialTrajectory& traj);

// ---- boundary trajectories and the planar reduction ---------------------------------------------

struct BoundarySample {
    double t = 0;
    Vec4 P{};
    BoundaryJet jet;
    double r = 0;
};

/// A large solution viewed in the boundary chart, t ascending.
struct BoundaryTrajectory {
    ProblemParams params;
    double R = 0;
    std::vector<BoundarySample> samples;
    std::shared_ptr<const RadialTrajectory> source;

    Vec4 at(double t) const;
};

/// Samples the part of a blow-up trajectory with t <= t_max on a uniform t grid.
BoundaryTrajectory to_boundary_trajectory(std::shared_ptr<const RadialTrajectory> traj, double R,
                                          std::size_t n = 400, double t_max = 0.0);

/// Smallest k with 1/k <= X, Y, |Z|, |W| <= k over the samples with t <= t_bar.
double measured_bound_k(const BoundaryTrajectory& bt, double t_bar);

struct ReducedPoint {
    double x = 0, y = 0, tau = 0;
    double t = 0;
    double residual_x = 0, residual_y = 0;  // (x_tau, y_tau) minus the autonomous planar field
};

struct ReducedPath {
    std::vector<ReducedPoint> points;  // tau ascending
};

/// x = -X/Z, y = -Y/Z, tau = -int_t^tbar Z dt (Gauss-Legendre on the dense output).
ReducedPath reduce_to_2d(const BoundaryTrajectory& bt);

// ---- planar system -----------------------------------------------------------------------------

Vec2 reduced2_field(double delta, double mu, const Vec2& xy);

struct Reduced2FixedPoints {
    Vec2 O, j0, l0, m0;
};
Reduced2FixedPoints reduced2_fixed_points(double delta, double mu);

/// Roots of (gamma+1) l^2 + (gamma+xi+1) l + 2(xi+1) = 0.
std::array<std::complex<double>, 2> reduced_m0_spectrum(double delta, double mu);
/// Eigenvalues of the Jacobian of the planar field at m0 (independent route).
std::array<std::complex<double>, 2> reduced_m0_jacobian_spectrum(double delta, double mu);

struct DulacCertificate {
    double p = 0, q = 0, M = 0;
    std::optional<Rational> p_exact, q_exact, M_exact;
};

/// Multiplier B = x^p (y - 1/(delta+1))^-q with constant weighted divergence M.
DulacCertificate dulac_certificate(double delta, double mu);
double dulac_multiplier(double delta, double p, double q, const Vec2& xy);
/// div(B (F, G)) / B for arbitrary exponents, affine in (x, y).
double dulac_divergence_ratio(double delta, double mu, double p, double q, const Vec2& xy);

struct Reduced2Run {
    std::vector<double> tau;
    std::vector<Vec2> path;
    double final_distance = 0;
};
Reduced2Run integrate_reduced2(double delta, double mu, const Vec2& start, double tau_end);

// ---- integration of the origin field ----------------------------------------------------------

struct PhaseIntegrationOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double max_step = 1.0;
    double escape_norm = 1e8;  // stop when |P| exceeds this
    bool stop_on_region_exit = true;
    double region_tol = 1e-12;
};

enum class PhaseStop { ReachedEnd, RegionExit, Escaped, StepFailure };
std::string to_string(PhaseStop s);

/// One integration leg of the origin field; t may run in either direction.
struct PhaseLeg {
    DenseSolution<4> dense;
    std::vector<double> t;
    std::vector<Vec4> P;
    PhaseStop stop = PhaseStop::ReachedEnd;
};

PhaseLeg integrate_origin_field(const ProblemParams& p, const Vec4& start, double t0, double t_end,
                                const PhaseIntegrationOptions& opt = {});

/// Trajectory assembled from a backward and a forward leg, t ascending.
struct PhaseTrajectory {
    ProblemParams params;
    std::vector<double> t;
    std::vector<Vec4> P;
    std::vector<PhaseLeg> legs;

    double t_min() const { return t.front(); }
    double t_max() const { return t.back(); }
    Vec4 at(double t) const;
};

PhaseTrajectory join_legs(const ProblemParams& p, PhaseLeg backward, PhaseLeg forward);

}  // namespace largesol
