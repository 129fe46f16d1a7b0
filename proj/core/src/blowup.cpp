#include "largesol/errors.hpp"
#include "largesol/radial_ode.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <sstream>

namespace largesol {

namespace {

// Distance d to the blow-up point from one sample (w, w') of a profile w ~ C d^-g (1 + O(d)).
// Eliminating the O(d) coefficient between w and w' leaves
//     w' d - (g - 1) w - C d^-g = 0,
// whose left side increases in d, so the root is unique.
double refined_distance(double w, double wp, double C, double g) {
    const double d0 = std::pow(C / w, 1.0 / g);
    if (!(wp > 0)) return d0;
    auto h = [&](double d) { return wp * d - (g - 1) * w - C * std::pow(d, -g); };
    double lo = d0, hi = d0;
    for (int i = 0; i < 60 && h(lo) > 0; ++i) lo *= 0.5;
    for (int i = 0; i < 60 && h(hi) < 0; ++i) hi *= 2.0;
    const double hlo = h(lo), hhi = h(hi);
    if (!(hlo <= 0 && hhi >= 0)) return d0;
    if (hlo == 0) return lo;
    if (hhi == 0) return hi;
    std::uintmax_t iters = 200;
    const auto br = boost::math::tools::toms748_solve(h, lo, hi, hlo, hhi,
                                                      boost::math::tools::eps_tolerance<double>(53), iters);
    return 0.5 * (br.first + br.second);
}

}  // namespace

BlowupEstimate estimate_from_trajectory(const RadialTrajectory& traj, const IntegratorConfig& cfg) {
    const ProblemParams& p = traj.params;
    const Exponents e = derive_exponents(p);
    const BoundaryConstants bc = boundary_constants(p);
    if (traj.crossings.size() < 2) {
        std::ostringstream os;
        os << "only " << traj.crossings.size() << " threshold crossing(s) recorded before r = " << traj.r_last();
        throw NonConvergenceError(os.str());
    }

    BlowupEstimate est;
    for (const auto& c : traj.crossings) {
        const RadialState& s = c.state;
        TrailEntry t;
        t.threshold = c.threshold;
        t.r = s.r;
        t.R_leading = s.r + std::pow(bc.A1 / s.u, 1.0 / e.gamma);
        double Ru = t.R_leading, Rv = t.R_leading;
        // The constants depend on R through the weights; a few fixed-point sweeps settle it.
        for (int k = 0; k < 4; ++k) {
            const RCorrection cu = general_R_correction(p, Ru), cv = general_R_correction(p, Rv);
            Ru = s.r + refined_distance(s.u, s.up, bc.A1 * cu.A_factor, e.gamma);
            Rv = s.r + refined_distance(s.v, s.vp, bc.B1 * cv.B_factor, e.xi);
        }
        t.R_u = Ru;
        t.R_v = Rv;
        est.trail.push_back(t);
    }

    const TrailEntry& last = est.trail.back();
    const TrailEntry& prev = est.trail[est.trail.size() - 2];
    est.R_hat = 0.5 * (last.R_u + last.R_v);
    const double prev_hat = 0.5 * (prev.R_u + prev.R_v);
    est.err = std::max({std::fabs(last.R_u - last.R_v), std::fabs(est.R_hat - prev_hat),
                        8 * std::numeric_limits<double>::epsilon() * est.R_hat});
    if (!(est.err <= cfg.blowup_rel_tol * est.R_hat) || !(est.R_hat > traj.r_last())) {
        std::ostringstream os;
        os.precision(15);
        os << "blow-up extrapolation did not settle: R estimates";
        for (const auto& t : est.trail) os << " [u=" << t.threshold << ": " << t.R_u << ", " << t.R_v << "]";
        throw NonConvergenceError(os.str());
    }
    return est;
}

BlowupRun blowup_run(const ProblemParams& p, double u0, double v0, const IntegratorConfig& cfg,
                     Nonlinearity mode) {
    require_blowup(p);
    if (u0 == 0 && v0 == 0) throw DomainError("(u0, v0) != (0, 0)", "the trivial solution does not blow up");
    BlowupRun run{integrate_regular(p, u0, v0, cfg.max_radius, cfg, mode), {}};
    if (run.trajectory.termination != Termination::BlowupEvent) {
        std::ostringstream os;
        os << "no blow-up detected up to r = " << run.trajectory.r_last();
        throw IntegrationError(os.str());
    }
    run.estimate = estimate_from_trajectory(run.trajectory, cfg);
    return run;
}

BlowupEstimate estimate_blowup_radius(const ProblemParams& p, double u0, double v0, const IntegratorConfig& cfg) {
    return blowup_run(p, u0, v0, cfg).estimate;
}

}  // namespace largesol
