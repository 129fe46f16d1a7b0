#include "largesol/radial_ode.hpp"

#include "largesol/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace largesol {

namespace {

double g_u(Nonlinearity mode, double delta, double v) {
    if (mode == Nonlinearity::Biharmonic) return v;
    return v > 0 ? std::pow(v, delta) : 0.0;
}

double g_v(Nonlinearity mode, double mu, double u) {
    if (mode == Nonlinearity::Biharmonic) return std::pow(std::fabs(u), mu);
    return u > 0 ? std::pow(u, mu) : 0.0;
}

double weight(double r, double e) { return e == 0 ? 1.0 : std::pow(r, e); }

RadialState state_of(double r, const Vec<4>& y) { return {r, y[0], y[1], y[2], y[3]}; }

}  // namespace

void IntegratorConfig::validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw DomainError("tolerances > 0", "rel_tol and abs_tol must be positive");
    if (!(max_step > 0)) throw DomainError("max_step > 0", "max_step must be positive");
    for (std::size_t i = 1; i < blowup_thresholds.size(); ++i)
        if (!(blowup_thresholds[i] > blowup_thresholds[i - 1]))
            throw DomainError("increasing threshold schedule", "blow-up thresholds must be strictly increasing");
    if (series_start_radius < 0) throw DomainError("series_start_radius >= 0", "negative series radius");
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::ReachedEnd: return "reached_end";
        case Termination::BlowupEvent: return "blowup";
        case Termination::StepUnderflow: return "step_underflow";
        case Termination::MaxSteps: return "max_steps";
    }
    return "unknown";
}

ProblemParams biharmonic_params(double N, double mu, double b) { return {N, 0.0, b, 1.0, mu}; }

Vec<4> radial_rhs(const ProblemParams& p, Nonlinearity mode, double r, const Vec<4>& y) {
    const double damp = (p.N - 1) / r;
    return {y[1], weight(r, p.a) * g_u(mode, p.delta, y[2]) - damp * y[1],
            y[3], weight(r, p.b) * g_v(mode, p.mu, y[0]) - damp * y[3]};
}

RadialJet make_jet(const ProblemParams& p, Nonlinearity mode, const RadialState& s) {
    const auto f = radial_rhs(p, mode, s.r, {s.u, s.up, s.v, s.vp});
    return {s.r, s.u, s.up, f[1], s.v, s.vp, f[3]};
}

std::array<double, 2> ode_defect(const ProblemParams& p, const RadialJet& j, Nonlinearity mode) {
    const double damp = (p.N - 1) / j.r;
    return {j.upp + damp * j.up - weight(j.r, p.a) * g_u(mode, p.delta, j.v),
            j.vpp + damp * j.vp - weight(j.r, p.b) * g_v(mode, p.mu, j.u)};
}

std::array<double, 2> ode_relative_defect(const ProblemParams& p, const RadialJet& j, Nonlinearity mode) {
    const double damp = (p.N - 1) / j.r;
    const auto d = ode_defect(p, j, mode);
    const double su = std::fabs(j.upp) + std::fabs(damp * j.up) + std::fabs(weight(j.r, p.a) * g_u(mode, p.delta, j.v));
    const double sv = std::fabs(j.vpp) + std::fabs(damp * j.vp) + std::fabs(weight(j.r, p.b) * g_v(mode, p.mu, j.u));
    return {su > 0 ? d[0] / su : 0.0, sv > 0 ? d[1] / sv : 0.0};
}

RadialState RadialTrajectory::at(double r) const {
    if (dense.empty()) return samples.front().state;
    return state_of(r, dense(r));
}

RadialJet RadialTrajectory::jet_at(double r) const { return make_jet(params, mode, at(r)); }

std::vector<RadialJet> RadialTrajectory::jets() const {
    std::vector<RadialJet> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(make_jet(params, mode, s.state));
    return out;
}

RadialTrajectory integrate(const ProblemParams& p, const RadialState& start, double r_end,
                           const IntegratorConfig& cfg, Nonlinearity mode) {
    cfg.validate();
    if (!(start.r > 0)) throw DomainError("r > 0", "integration must start at a positive radius");
    if (!(r_end > 0) || r_end == start.r) throw DomainError("r_end > 0, r_end != r", "bad end radius");

    RadialTrajectory traj;
    traj.params = p;
    traj.mode = mode;
    traj.samples.push_back({start, 0.0});
    const bool outward = r_end > start.r;

    std::size_t next = 0;
    const auto& thr = cfg.blowup_thresholds;
    if (outward)
        while (next < thr.size() && start.u >= thr[next]) ++next;
    const bool watch = outward && next < thr.size();

    double scale = std::max({std::fabs(start.u), std::fabs(start.v), 1e-300});

    Dop853Options opt;
    opt.rel_tol = cfg.rel_tol;
    opt.abs_tol = cfg.abs_tol;
    opt.max_step = cfg.max_step;
    opt.max_steps = cfg.max_steps;

    auto rhs = [&](double r, const Vec<4>& y) { return radial_rhs(p, mode, r, y); };
    auto observer = [&](const DenseStep<4>& ds, const Vec<4>& y, double err) {
        traj.dense.push(ds);
        const double r = ds.t1();
        traj.samples.push_back({state_of(r, y), err});
        if (mode == Nonlinearity::PositiveCone) {
            const double floor = -cfg.negativity_tol * scale;
            if (y[0] < floor) throw NegativityError("u became negative in a positive-cone integration", r, y[0]);
            if (y[2] < floor) throw NegativityError("v became negative in a positive-cone integration", r, y[2]);
        }
        scale = std::max({scale, std::fabs(y[0]), std::fabs(y[2])});
        if (!watch) return StepControl::Continue;
        while (next < thr.size() && y[0] >= thr[next]) {
            const double level = thr[next];
            auto f = [&](double rr) { return ds.eval(rr)[0] - level; };
            double lo = std::min(ds.t0, r), hi = std::max(ds.t0, r);
            double flo = f(lo), fhi = f(hi);
            double rc = hi;
            if (flo < 0 && fhi >= 0) {
                std::uintmax_t iters = 100;
                auto br = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                            boost::math::tools::eps_tolerance<double>(52), iters);
                rc = 0.5 * (br.first + br.second);
            }
            traj.crossings.push_back({level, state_of(rc, ds.eval(rc))});
            ++next;
        }
        return next == thr.size() ? StepControl::Stop : StepControl::Continue;
    };

    const auto res = dop853<4>(rhs, start.r, {start.u, start.up, start.v, start.vp}, r_end, opt, observer);
    traj.rhs_evaluations = res.evaluations;
    switch (res.status) {
        case Dop853Status::Completed: traj.termination = Termination::ReachedEnd; break;
        case Dop853Status::Stopped: traj.termination = Termination::BlowupEvent; break;
        case Dop853Status::StepUnderflow:
            if (!traj.crossings.empty()) {
                traj.termination = Termination::BlowupEvent;
            } else {
                std::ostringstream os;
                os << "step size underflow at r = " << res.t << " (u = " << res.y[0] << ", v = " << res.y[2] << ")";
                throw IntegrationError(os.str());
            }
            break;
        case Dop853Status::MaxSteps: {
            std::ostringstream os;
            os << "step budget exhausted at r = " << res.t;
            throw IntegrationError(os.str());
        }
        case Dop853Status::NonFinite: throw IntegrationError("non-finite right-hand side at the initial state");
    }
    return traj;
}

RadialTrajectory integrate_regular(const ProblemParams& p, double u0, double v0, double r_end,
                                   const IntegratorConfig& cfg, Nonlinearity mode) {
    if (u0 == 0 && v0 == 0) {
        // The trivial solution; nothing to integrate.
        RadialTrajectory traj;
        traj.params = p;
        traj.mode = mode;
        traj.initial_data = std::array<double, 2>{0.0, 0.0};
        traj.samples.push_back({RadialState{0.0, 0, 0, 0, 0}, 0.0});
        traj.samples.push_back({RadialState{r_end, 0, 0, 0, 0}, 0.0});
        traj.termination = Termination::ReachedEnd;
        return traj;
    }
    const SeriesStart s = auto_series_start(p, u0, v0, cfg, mode);
    if (!(r_end > s.eps)) throw DomainError("r_end > series radius", "end radius inside the series region");
    RadialTrajectory traj = integrate(p, s.state, r_end, cfg, mode);
    traj.initial_data = std::array<double, 2>{u0, v0};
    traj.series_radius = s.eps;
    return traj;
}

RadialTrajectory integrate_biharmonic(double N, double mu, double b, double u0, double v0,
                                      const IntegratorConfig& cfg, double r_end) {
    if (!(mu > 1)) throw DomainError("mu > 1", "the biharmonic reduction needs mu > 1");
    const ProblemParams p = biharmonic_params(N, mu, b);
    require_weights(p);
    const double end = std::isfinite(r_end) ? r_end : cfg.max_radius;
    return integrate_regular(p, u0, v0, end, cfg, Nonlinearity::Biharmonic);
}

}  // namespace largesol
