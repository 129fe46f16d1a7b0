#include "commands.hpp"

#include "largesol/asymptotics.hpp"
#include "largesol/blowcurve.hpp"
#include "largesol/errors.hpp"
#include "largesol/io.hpp"
#include "largesol/manifolds.hpp"
#include "largesol/orbits.hpp"
#include "largesol/radial_ode.hpp"
#include "largesol/verify/acceptance.hpp"

#include <iostream>
#include <memory>
#include <sstream>

namespace largesol::cli {

namespace {

void emit(const std::string& path, const std::string& text) {
    if (path.empty())
        std::cout << text;
    else
        io::write_file(path, text);
}

std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

IntegratorConfig integrator(const RunConfig& c) {
    IntegratorConfig cfg;
    cfg.rel_tol = c.tol;
    cfg.validate();
    return cfg;
}

}  // namespace

int cmd_constants(const RunConfig& c) {
    emit(c.out, dump(io::constants_json(c.problem)));
    return kExitOk;
}

int cmd_integrate(const RunConfig& c) {
    const IntegratorConfig cfg = integrator(c);
    auto traj = std::make_shared<RadialTrajectory>(
        c.r_end ? integrate_regular(c.problem, c.u0, c.v0, *c.r_end, cfg) : integrate_regular(c.problem, c.u0, c.v0,
                                                                                             cfg.max_radius, cfg));
    std::ostringstream os;
    io::write_trajectory_csv(os, *traj);
    emit(c.out, os.str());
    if (traj->termination == Termination::BlowupEvent) {
        const BlowupEstimate est = estimate_from_trajectory(*traj, cfg);
        if (!c.summary.empty()) io::write_file(c.summary, dump(io::to_json(est)));
        if (!c.csv.empty()) {
            const BoundaryTrajectory bt = to_boundary_trajectory(traj, est.R_hat, 400);
            std::ostringstream ps;
            io::write_phase_csv(ps, bt);
            io::write_file(c.csv, ps.str());
        }
    } else if (!c.csv.empty()) {
        throw DomainError("the solution blows up", "boundary-chart output needs a blow-up trajectory");
    }
    return kExitOk;
}

int cmd_blowup(const RunConfig& c) {
    const IntegratorConfig cfg = integrator(c);
    const BlowupRun run = blowup_run(c.problem, c.u0, c.v0, cfg);
    io::json j;
    j["params"] = io::to_json(c.problem);
    j["u0"] = c.u0;
    j["v0"] = c.v0;
    j["estimate"] = io::to_json(run.estimate);
    const BoundaryExpansionFit fit = fit_boundary_expansion(run.trajectory, c.problem, run.estimate.R_hat);
    j["boundary_fit"] = io::to_json(fit);
    emit(c.out, dump(j));
    return fit.pass() ? kExitOk : kExitClaim;
}

int cmd_curve(const RunConfig& c) {
    const ProblemParams& p = c.problem;
    if (p.a != 0 || p.b != 0) throw DomainError("a = b = 0", "the curve S is traced for the unweighted system");
    CurveOptions opt;
    opt.refine = c.refine;
    const CurveTrace tr = trace_S(p.N, p.delta, p.mu, c.n, integrator(c), opt);
    std::ostringstream os;
    io::write_curve_csv(os, tr);
    emit(c.out, os.str());
    if (!c.summary.empty()) io::write_file(c.summary, dump(io::curve_summary_json(tr)));
    if (!c.csv.empty()) {
        std::vector<double> u, v;
        for (const auto& q : tr.points) {
            u.push_back(q.u0);
            v.push_back(q.v0);
        }
        std::ostringstream cols;
        io::write_columns(cols, u, v);
        io::write_file(c.csv, cols.str());
    }
    return kExitOk;
}

int cmd_fixed_points(const RunConfig& c) {
    const auto catalog = fixed_point_catalog(c.problem);
    emit(c.out, dump(io::catalog_json(catalog)));
    if (!c.summary.empty()) io::write_file(c.summary, dump(io::to_json(m0_spectrum(c.problem, false))));
    return kExitOk;
}

int cmd_connect(const RunConfig& c) {
    const ConnectingOrbitReport r = connecting_orbit(c.problem);
    emit(c.out, dump(io::to_json(r)));
    if (!c.csv.empty()) {
        std::ostringstream os;
        os << "r,u,v\n";
        for (std::size_t i = 0; i < r.trajectory.t.size(); ++i) {
            const auto s = r.solution(i);
            os << io::fmt(s[0]) << ',' << io::fmt(s[1]) << ',' << io::fmt(s[2]) << '\n';
        }
        io::write_file(c.csv, os.str());
    }
    return r.pass() ? kExitOk : kExitClaim;
}

int cmd_verify(const RunConfig& c) {
    if (c.suite != "paper") throw DomainError("suite is 'paper'", c.suite);
    const auto results = verify::run_suite(c.seed);
    int failed = 0;
    for (const auto& r : results) {
        std::cout << verify::format_line(r) << '\n';
        failed += r.pass ? 0 : 1;
    }
    if (!c.out.empty()) io::write_file(c.out, verify::markdown_table(results));
    std::cout << results.size() << " criteria, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitClaim;
}

}  // namespace largesol::cli
