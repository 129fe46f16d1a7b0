#include "largesol/blowcurve.hpp"

#include "largesol/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

namespace largesol {

namespace {

ProblemParams curve_params(double N, double delta, double mu) { return {N, 0, 0, delta, mu}; }

/// Runs f(i) for i in [0, n) on a small thread pool; results are stored by index so the
/// output order does not depend on scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) f(i);
    };
    if (threads <= 1) {
        worker();
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
}

}  // namespace

double rho(double N, double delta, double mu, double u0, double v0, const IntegratorConfig& cfg) {
    const ProblemParams p = curve_params(N, delta, mu);
    require_blowup(p);
    if (u0 < 0 || v0 < 0 || (u0 == 0 && v0 == 0))
        throw DomainError("u0, v0 >= 0, not both 0", "initial data must be nonnegative and nontrivial");
    return estimate_blowup_radius(p, u0, v0, cfg).R_hat;
}

CurvePoint normalize_to_S(double N, double delta, double mu, double u0, double v0, const IntegratorConfig& cfg,
                          bool check) {
    const Exponents e = derive_exponents(curve_params(N, delta, mu));
    const double norm = std::hypot(u0, v0);
    CurvePoint c;
    c.theta = std::atan2(v0, u0);
    // normalise the ray direction first so rho_at_angle refers to (cos theta, sin theta)
    const double cu = u0 / norm, cv = v0 / norm;
    c.rho_at_angle = rho(N, delta, mu, cu, cv, cfg);
    c.u0 = std::pow(c.rho_at_angle, e.gamma) * cu;
    c.v0 = std::pow(c.rho_at_angle, e.xi) * cv;
    if (check) c.rho_check = rho(N, delta, mu, c.u0, c.v0, cfg);
    return c;
}

CurveTrace trace_S(double N, double delta, double mu, int n, const IntegratorConfig& cfg, const CurveOptions& opt) {
    const ProblemParams p = curve_params(N, delta, mu);
    require_blowup(p);
    if (std::min(delta, mu) < 1)
        throw DomainError("min(delta, mu) >= 1", "continuity of the blow-up radius is only known in this range");
    if (n < 2) throw DomainError("n >= 2", "n = " + std::to_string(n));

    std::vector<double> thetas(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) thetas[static_cast<std::size_t>(k)] = std::numbers::pi / 2 * k / (n - 1);

    auto evaluate = [&](const std::vector<double>& th) {
        std::vector<CurvePoint> pts(th.size());
        std::vector<std::string> errors(th.size());
        parallel_for(th.size(), opt.threads, [&](std::size_t i) {
            try {
                const double t = th[i];
                // exact axis directions at the two ends
                const double cu = t == 0 ? 1 : (t == std::numbers::pi / 2 ? 0 : std::cos(t));
                const double cv = t == 0 ? 0 : (t == std::numbers::pi / 2 ? 1 : std::sin(t));
                pts[i] = normalize_to_S(N, delta, mu, cu, cv, cfg);
                pts[i].theta = t;
            } catch (const std::exception& ex) {
                errors[i] = ex.what();
            }
        });
        std::ostringstream os;
        int bad = 0;
        for (std::size_t i = 0; i < th.size(); ++i)
            if (!errors[i].empty()) {
                os << (bad++ ? "; " : "") << "point " << i << " (theta = " << th[i] << "): " << errors[i];
            }
        if (bad) throw IntegrationError("curve tracing failed at " + std::to_string(bad) + " point(s): " + os.str());
        return pts;
    };

    CurveTrace tr;
    tr.points = evaluate(thetas);
    if (opt.refine) {
        std::vector<double> extra;
        for (std::size_t i = 1; i < tr.points.size(); ++i) {
            const double a = tr.points[i - 1].rho_at_angle, b = tr.points[i].rho_at_angle;
            if (std::fabs(b - a) > opt.refine_jump * std::min(a, b))
                extra.push_back(0.5 * (tr.points[i - 1].theta + tr.points[i].theta));
        }
        if (!extra.empty()) {
            auto more = evaluate(extra);
            tr.points.insert(tr.points.end(), more.begin(), more.end());
            std::sort(tr.points.begin(), tr.points.end(),
                      [](const CurvePoint& x, const CurvePoint& y) { return x.theta < y.theta; });
        }
    }

    tr.u0_bar = tr.points.front().u0;
    tr.v0_bar = tr.points.back().v0;
    for (const auto& c : tr.points) {
        tr.max_rho_residual = std::max(tr.max_rho_residual, std::fabs(c.rho_check - 1));
        tr.max_outside = std::max({tr.max_outside, -c.u0, c.u0 - tr.u0_bar, -c.v0, c.v0 - tr.v0_bar});
    }
    if (delta == mu && !opt.refine) {
        const std::size_t m = tr.points.size();
        for (std::size_t i = 0; i < m; ++i) {
            const auto& a = tr.points[i];
            const auto& b = tr.points[m - 1 - i];
            tr.max_mirror_error = std::max(tr.max_mirror_error, std::hypot(a.u0 - b.v0, a.v0 - b.u0));
        }
    }
    double prev = INFINITY;
    for (double s : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double r = rho(N, delta, mu, s, s, cfg);
        if (r > prev * (1 + 1e-9)) tr.diagonal_decreasing = false;
        prev = r;
    }
    return tr;
}

}  // namespace largesol
