#include "largesol/errors.hpp"
#include "largesol/phase.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <sstream>

namespace largesol {

Vec2 reduced2_field(double delta, double mu, const Vec2& xy) {
    const auto [x, y] = xy;
    return {x * (2 - x - delta * y), (y - 1 / (delta + 1)) * ((mu + 1) * x - (delta + 1) * y)};
}

Reduced2FixedPoints reduced2_fixed_points(double delta, double mu) {
    const double c = 1 / (delta + 1);
    const double den = mu * delta + 2 * delta + 1;
    return {{0, 0}, {0, c}, {(delta + 2) / (delta + 1), c}, {2 * (delta + 1) / den, 2 * (mu + 1) / den}};
}

namespace {

std::array<std::complex<double>, 2> quadratic_roots(double a, double b, double c) {
    const std::complex<double> disc = std::sqrt(std::complex<double>(b * b - 4 * a * c));
    // Avoid cancellation for the real case.
    if (disc.imag() == 0) {
        const double q = -0.5 * (b + std::copysign(disc.real(), b));
        std::array<std::complex<double>, 2> r{q / a, c / q};
        if (r[0].real() > r[1].real()) std::swap(r[0], r[1]);
        return r;
    }
    return {(-b - disc) / (2 * a), (-b + disc) / (2 * a)};
}

}  // namespace

std::array<std::complex<double>, 2> reduced_m0_spectrum(double delta, double mu) {
    const Exponents e = derive_exponents(ProblemParams{1, 0, 0, delta, mu});
    return quadratic_roots(e.gamma + 1, e.gamma + e.xi + 1, 2 * (e.xi + 1));
}

std::array<std::complex<double>, 2> reduced_m0_jacobian_spectrum(double delta, double mu) {
    const Vec2 m = reduced2_fixed_points(delta, mu).m0;
    const auto [x, y] = m;
    const double c = 1 / (delta + 1);
    const double fx = 2 - 2 * x - delta * y, fy = -delta * x;
    const double gx = (y - c) * (mu + 1), gy = ((mu + 1) * x - (delta + 1) * y) - (delta + 1) * (y - c);
    return quadratic_roots(1, -(fx + gy), fx * gy - fy * gx);
}

DulacCertificate dulac_certificate(double delta, double mu) {
    if (!(mu * delta - 1 > 0)) throw DomainError("mu*delta - 1 > 0", "no certificate without superlinearity");
    DulacCertificate c;
    const double den = mu * delta + 2 * delta + 1;
    c.q = (mu * delta + 2 * delta + 2) / den;
    c.p = mu - 1 - c.q * (mu + 1);
    c.M = -((mu * delta + 2 * mu + 1) / den + delta + 2) / (delta + 1);
    const auto d = to_rational(delta), m = to_rational(mu);
    if (d && m) {
        const Rational rden = *m * *d + 2 * *d + 1;
        c.q_exact = (*m * *d + 2 * *d + 2) / rden;
        c.p_exact = *m - 1 - *c.q_exact * (*m + 1);
        c.M_exact = -((*m * *d + 2 * *m + 1) / rden + *d + 2) / (*d + 1);
    }
    return c;
}

double dulac_multiplier(double delta, double p, double q, const Vec2& xy) {
    return std::pow(xy[0], p) * std::pow(xy[1] - 1 / (delta + 1), -q);
}

double dulac_divergence_ratio(double delta, double mu, double p, double q, const Vec2& xy) {
    const auto [x, y] = xy;
    const double eta = y - 1 / (delta + 1);
    return (mu - 1 - p - q * (mu + 1)) * x - (p * delta - q * (delta + 1) + 3 * delta + 2) * eta +
           (p * (delta + 2) + q * (delta + 1) + 1) / (delta + 1);
}

Reduced2Run integrate_reduced2(double delta, double mu, const Vec2& start, double tau_end) {
    Reduced2Run run;
    run.tau.push_back(0);
    run.path.push_back(start);
    Dop853Options o;
    o.rel_tol = 1e-12;
    o.abs_tol = 1e-14;
    o.max_step = 1.0;
    auto rhs = [&](double, const Vec2& xy) { return reduced2_field(delta, mu, xy); };
    dop853<2>(rhs, 0.0, start, tau_end, o, [&](const DenseStep<2>& ds, const Vec2& xy, double) {
        run.tau.push_back(ds.t1());
        run.path.push_back(xy);
        return StepControl::Continue;
    });
    const Vec2 m = reduced2_fixed_points(delta, mu).m0;
    run.final_distance = std::hypot(run.path.back()[0] - m[0], run.path.back()[1] - m[1]);
    return run;
}

ReducedPath reduce_to_2d(const BoundaryTrajectory& bt) {
    const ProblemParams& p = bt.params;
    const auto& S = bt.samples;
    for (const auto& s : S)
        if (!(s.P[2] < 0)) {
            std::ostringstream os;
            os << "Z = " << s.P[2] << " at t = " << s.t;
            throw DomainError("Z < 0", os.str());
        }

    ReducedPath path;
    path.points.resize(S.size());
    double tau = 0;
    for (std::size_t k = S.size(); k-- > 0;) {
        if (k + 1 < S.size()) {
            auto absZ = [&](double t) { return -bt.at(t)[2]; };
            tau += boost::math::quadrature::gauss<double, 8>::integrate(absZ, S[k].t, S[k + 1].t);
        }
        const auto [X, Y, Z, W] = S[k].P;
        const Vec4 f = boundary_field(p, S[k].P, S[k].t);
        ReducedPoint rp;
        rp.t = S[k].t;
        rp.tau = tau;
        rp.x = -X / Z;
        rp.y = -Y / Z;
        const double xt = -(f[0] * Z - X * f[2]) / (Z * Z);
        const double yt = -(f[1] * Z - Y * f[2]) / (Z * Z);
        const Vec2 g = reduced2_field(p.delta, p.mu, {rp.x, rp.y});
        rp.residual_x = xt / Z - g[0];
        rp.residual_y = yt / Z - g[1];
        path.points[S.size() - 1 - k] = rp;
    }
    return path;
}

}  // namespace largesol
