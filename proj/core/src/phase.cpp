#include "largesol/phase.hpp"

#include "largesol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace largesol {

bool in_region(const Vec4& P, double tol) { return P[0] * P[2] <= tol && P[1] * P[3] <= tol; }

double psi(double N, double s) {
    if (N == 2) return std::exp(-s);
    const double base = 1 + (N - 2) * s;
    if (!(base > 0)) throw DomainError("1 + (N-2)s > 0", "s = " + std::to_string(s) + " outside the branch");
    return std::pow(base, -1.0 / (N - 2));
}

double psi_inv(double N, double r) {
    if (!(r > 0)) throw DomainError("r > 0", "r = " + std::to_string(r));
    if (N == 2) return -std::log(r);
    return (std::pow(r, 2 - N) - 1) / (N - 2);
}

double psi_derivative(double N, double s) { return -std::pow(psi(N, s), N - 1); }

PhasePoint to_phase_origin(const ProblemParams& p, const RadialState& s) {
    auto nonzero = [](double x, const char* name) {
        if (x == 0) throw DomainError(std::string(name) + " != 0", std::string(name) + " vanishes; phase variables undefined");
    };
    nonzero(s.u, "u");
    nonzero(s.v, "v");
    nonzero(s.up, "u'");
    nonzero(s.vp, "v'");
    PhasePoint P;
    P.chart = Chart::Origin;
    P.t = std::log(s.r);
    P.X = -s.r * s.up / s.u;
    P.Y = -s.r * s.vp / s.v;
    P.Z = std::pow(s.r, 1 + p.a) * std::pow(s.v, p.delta) / s.up;
    P.W = std::pow(s.r, 1 + p.b) * std::pow(s.u, p.mu) / s.vp;
    return P;
}

RadialState from_phase_origin(const ProblemParams& p, const PhasePoint& P, double r) {
    const double zx = P.Z * P.X, wy = P.W * P.Y;
    if (!(zx < 0) || !(wy < 0)) throw DomainError("XZ < 0 and YW < 0", "point is not admissible");
    const Exponents e = derive_exponents(p);
    const double u = std::pow(r, -e.gamma_ab) * std::pow(-zx, 1 / e.D) * std::pow(-wy, p.delta / e.D);
    const double v = std::pow(r, -e.xi_ab) * std::pow(-wy, 1 / e.D) * std::pow(-zx, p.mu / e.D);
    return {r, u, -P.X * u / r, v, -P.Y * v / r};
}

Vec4 origin_field(const ProblemParams& p, const Vec4& P) {
    const auto [X, Y, Z, W] = P;
    const double n2 = p.N - 2;
    return {X * (X - n2 + Z), Y * (Y - n2 + W), Z * (p.N + p.a - p.delta * Y - Z), W * (p.N + p.b - p.mu * X - W)};
}

Mat4 origin_jacobian(const ProblemParams& p, const Vec4& P) {
    const auto [X, Y, Z, W] = P;
    const double n2 = p.N - 2;
    Mat4 J{};
    J[0] = {2 * X - n2 + Z, 0, X, 0};
    J[1] = {0, 2 * Y - n2 + W, 0, Y};
    J[2] = {0, -p.delta * Z, p.N + p.a - p.delta * Y - 2 * Z, 0};
    J[3] = {-p.mu * W, 0, 0, p.N + p.b - p.mu * X - 2 * W};
    return J;
}

double alpha_coefficient(const ProblemParams& p, double t) {
    const double et = std::exp(t);
    return (2 * p.N - 2 + p.a) * et / (1 + (p.N - 2) * et);
}

double beta_coefficient(const ProblemParams& p, double t) {
    const double et = std::exp(t);
    return (2 * p.N - 2 + p.b) * et / (1 + (p.N - 2) * et);
}

Vec4 boundary_field(const ProblemParams& p, const Vec4& P, double t) {
    const auto [X, Y, Z, W] = P;
    const double al = alpha_coefficient(p, t), be = beta_coefficient(p, t);
    return {X * (X + 1 + Z), Y * (Y + 1 + W), Z * (1 - p.delta * Y - Z - al), W * (1 - p.mu * X - W - be)};
}

Vec4 frozen_boundary_field(const ProblemParams& p, const Vec4& P) {
    const auto [X, Y, Z, W] = P;
    return {X * (X + 1 + Z), Y * (Y + 1 + W), Z * (1 - p.delta * Y - Z), W * (1 - p.mu * X - W)};
}

Vec4 boundary_fixed_point(const ProblemParams& p) {
    const Exponents e = derive_exponents(p);
    return {e.gamma, e.xi, -1 - e.gamma, -1 - e.xi};
}

BoundaryJet boundary_jet(const ProblemParams& p, const RadialState& s, double R) {
    const Exponents e = derive_exponents(p);
    const double rho = s.r / R;
    const double su = std::pow(R, e.gamma_ab), sv = std::pow(R, e.xi_ab);
    BoundaryJet j;
    j.s = psi_inv(p.N, rho);
    const double lift = std::pow(rho, p.N - 1);
    j.u = su * s.u;
    j.v = sv * s.v;
    j.us = -lift * su * R * s.up;
    j.vs = -lift * sv * R * s.vp;
    return j;
}

PhasePoint to_phase_boundary(const ProblemParams& p, const RadialState& s, double R) {
    const BoundaryJet j = boundary_jet(p, s, R);
    const double rho = s.r / R;
    const double F = std::pow(rho, 2 * p.N - 2 + p.a), G = std::pow(rho, 2 * p.N - 2 + p.b);
    PhasePoint P;
    P.chart = Chart::Boundary;
    P.t = std::log(j.s);
    P.X = -j.s * j.us / j.u;
    P.Y = -j.s * j.vs / j.v;
    P.Z = j.s * F * std::pow(j.v, p.delta) / j.us;
    P.W = j.s * G * std::pow(j.u, p.mu) / j.vs;
    return P;
}

RadialState from_phase_boundary(const ProblemParams& p, const PhasePoint& P, double R) {
    const double zx = P.Z * P.X, wy = P.W * P.Y;
    if (!(zx < 0) || !(wy < 0)) throw DomainError("XZ < 0 and YW < 0", "point is not admissible");
    const Exponents e = derive_exponents(p);
    const double s = std::exp(P.t);
    const double rho = psi(p.N, s);
    const double F = std::pow(rho, 2 * p.N - 2 + p.a), G = std::pow(rho, 2 * p.N - 2 + p.b);
    const double D = e.D;
    const double u = std::pow(s, -e.gamma) * std::pow(F, -1 / D) * std::pow(G, -p.delta / D) *
                     std::pow(-zx, 1 / D) * std::pow(-wy, p.delta / D);
    const double v = std::pow(s, -e.xi) * std::pow(F, -p.mu / D) * std::pow(G, -1 / D) * std::pow(-wy, 1 / D) *
                     std::pow(-zx, p.mu / D);
    const double us = -P.X * u / s, vs = -P.Y * v / s;
    const double lift = std::pow(rho, p.N - 1);
    const double su = std::pow(R, e.gamma_ab), sv = std::pow(R, e.xi_ab);
    return {rho * R, u / su, -us / lift / (su * R), v / sv, -vs / lift / (sv * R)};
}

double varpi(const ProblemParams& p, const Vec4& P) {
    const auto [X, Y, Z, W] = P;
    return (p.mu + 1) * (X * Y + X * Z / (p.delta + 1) + Y * W / (p.mu + 1));
}

double H_sigma_theta(const ProblemParams& p, double sigma, double theta, const BoundaryJet& j) {
    const double r = psi(p.N, j.s);
    const double F = std::pow(r, 2 * p.N - 2 + p.a), G = std::pow(r, 2 * p.N - 2 + p.b);
    const double lift = std::pow(r, 2 - p.N);
    return lift * (j.us * j.vs - F * std::pow(j.v, p.delta + 1) / (p.delta + 1) -
                   G * std::pow(j.u, p.mu + 1) / (p.mu + 1)) -
           (sigma * j.v * j.us + theta * j.u * j.vs);
}

double H_sigma_theta_derivative(const ProblemParams& p, double sigma, double theta, const BoundaryJet& j) {
    const double r = psi(p.N, j.s);
    const double F = std::pow(r, 2 * p.N - 2 + p.a), G = std::pow(r, 2 * p.N - 2 + p.b);
    return (p.N - 2 - sigma - theta) * j.us * j.vs +
           F * std::pow(j.v, p.delta + 1) / (p.delta + 1) * (p.N + p.a - sigma * (p.delta + 1)) +
           G * std::pow(j.u, p.mu + 1) / (p.mu + 1) * (p.N + p.b - theta * (p.mu + 1));
}

double line_first_integral(const ProblemParams& p, const RadialState& s) {
    return s.up * s.vp - std::pow(s.u, p.mu + 1) / (p.mu + 1) - std::pow(s.v, p.delta + 1) / (p.delta + 1);
}

FirstIntegralDrift first_integral_drift(const RadialTrajectory& traj) {
    const ProblemParams& p = traj.params;
    if (p.N != 1 || p.a != 0 || p.b != 0)
        throw DomainError("N = 1, a = b = 0", "the first integral exists only on the line without weights");
    FirstIntegralDrift d;
    d.initial = line_first_integral(p, traj.samples.front().state);
    for (const auto& smp : traj.samples) {
        const RadialState& s = smp.state;
        const double c = line_first_integral(p, s);
        const double scale = std::fabs(s.up * s.vp) + std::pow(s.u, p.mu + 1) / (p.mu + 1) +
                             std::pow(s.v, p.delta + 1) / (p.delta + 1);
        const double scaled = std::fabs(c - d.initial) / scale;
        if (scaled > d.max_scaled_drift) {
            d.max_scaled_drift = scaled;
            d.r_at_max = s.r;
        }
        if (s.u <= 10 && d.initial != 0)
            d.max_drift_vs_initial = std::max(d.max_drift_vs_initial, std::fabs(c - d.initial) / std::fabs(d.initial));
    }
    return d;
}

Vec4 BoundaryTrajectory::at(double t) const {
    const double r = R * psi(params.N, std::exp(t));
    return to_phase_boundary(params, source->at(r), R).vec();
}

BoundaryTrajectory to_boundary_trajectory(std::shared_ptr<const RadialTrajectory> traj, double R, std::size_t n,
                                          double t_max) {
    if (!traj || traj->dense.empty()) throw DomainError("dense trajectory", "no trajectory to transform");
    if (!(R > traj->r_last())) throw DomainError("R > last radius", "blow-up radius inside the trajectory");
    if (n < 2) throw DomainError("n >= 2", "need at least two samples");
    const ProblemParams& p = traj->params;
    const double lo = std::log(psi_inv(p.N, traj->r_last() / R));
    const double r_begin = std::max(traj->dense.t_min(), traj->r_first());
    const double hi = std::min(t_max, std::log(psi_inv(p.N, r_begin / R)));
    if (!(hi > lo)) throw DomainError("t range", "trajectory does not reach the boundary chart window");

    BoundaryTrajectory bt;
    bt.params = p;
    bt.R = R;
    bt.source = traj;
    bt.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        const double r = std::clamp(R * psi(p.N, std::exp(t)), traj->dense.t_min(), traj->dense.t_max());
        const RadialState s = traj->at(r);
        BoundarySample b;
        b.t = t;
        b.r = r;
        b.jet = boundary_jet(p, s, R);
        b.P = to_phase_boundary(p, s, R).vec();
        bt.samples.push_back(b);
    }
    return bt;
}

double measured_bound_k(const BoundaryTrajectory& bt, double t_bar) {
    double k = 1;
    for (const auto& s : bt.samples) {
        if (s.t > t_bar) continue;
        for (double c : s.P) {
            const double a = std::fabs(c);
            k = std::max({k, a, 1 / a});
        }
    }
    return k;
}

std::string to_string(PhaseStop s) {
    switch (s) {
        case PhaseStop::ReachedEnd: return "reached_end";
        case PhaseStop::RegionExit: return "region_exit";
        case PhaseStop::Escaped: return "escaped";
        case PhaseStop::StepFailure: return "step_failure";
    }
    return "unknown";
}

PhaseLeg integrate_origin_field(const ProblemParams& p, const Vec4& start, double t0, double t_end,
                                const PhaseIntegrationOptions& opt) {
    PhaseLeg leg;
    leg.t.push_back(t0);
    leg.P.push_back(start);
    if (t_end == t0) return leg;

    Dop853Options o;
    o.rel_tol = opt.rel_tol;
    o.abs_tol = opt.abs_tol;
    o.max_step = opt.max_step;
    auto rhs = [&](double, const Vec4& P) { return origin_field(p, P); };
    auto obs = [&](const DenseStep<4>& ds, const Vec4& P, double) {
        leg.dense.push(ds);
        leg.t.push_back(ds.t1());
        leg.P.push_back(P);
        const double nrm = std::max({std::fabs(P[0]), std::fabs(P[1]), std::fabs(P[2]), std::fabs(P[3])});
        if (nrm > opt.escape_norm) {
            leg.stop = PhaseStop::Escaped;
            return StepControl::Stop;
        }
        if (opt.stop_on_region_exit && !in_region(P, opt.region_tol)) {
            leg.stop = PhaseStop::RegionExit;
            return StepControl::Stop;
        }
        return StepControl::Continue;
    };
    const auto res = dop853<4>(rhs, t0, start, t_end, o, obs);
    if (res.status == Dop853Status::StepUnderflow || res.status == Dop853Status::NonFinite ||
        res.status == Dop853Status::MaxSteps)
        leg.stop = PhaseStop::StepFailure;
    return leg;
}

PhaseTrajectory join_legs(const ProblemParams& p, PhaseLeg backward, PhaseLeg forward) {
    PhaseTrajectory tr;
    tr.params = p;
    for (std::size_t i = backward.t.size(); i-- > 0;) {
        tr.t.push_back(backward.t[i]);
        tr.P.push_back(backward.P[i]);
    }
    for (std::size_t i = 0; i < forward.t.size(); ++i) {
        if (!tr.t.empty() && forward.t[i] <= tr.t.back()) continue;
        tr.t.push_back(forward.t[i]);
        tr.P.push_back(forward.P[i]);
    }
    if (!backward.dense.empty()) tr.legs.push_back(std::move(backward));
    if (!forward.dense.empty()) tr.legs.push_back(std::move(forward));
    return tr;
}

Vec4 PhaseTrajectory::at(double tq) const {
    for (const auto& leg : legs)
        if (tq >= leg.dense.t_min() && tq <= leg.dense.t_max()) return leg.dense(tq);
    // Outside every dense leg: nearest stored sample.
    auto it = std::lower_bound(t.begin(), t.end(), tq);
    if (it == t.end()) return P.back();
    return P[static_cast<std::size_t>(it - t.begin())];
}

}  // namespace largesol
