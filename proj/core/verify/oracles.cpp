#include "largesol/verify/oracles.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

namespace largesol::oracle {

double line_blowup_radius(double p, double c) {
    // r(u) = int_c^u dw / sqrt(2 (w^(p+1) - c^(p+1)) / (p+1)); substitute w = c / x.
    const double k = 2.0 * std::pow(c, p + 1) / (p + 1);
    // integrand c x^-2 / sqrt(k (x^-(p+1) - 1)) = c x^((p-3)/2) / sqrt(k (1 - x^(p+1)))
    auto f = [&](double x, double xc) {
        // xc = 1 - x near the right end point keeps 1 - x^(p+1) accurate
        const double one_minus = xc > 0 ? -std::expm1((p + 1) * std::log1p(-xc)) : 1.0 - std::pow(x, p + 1);
        if (one_minus <= 0) return 0.0;
        return c * std::pow(x, 0.5 * (p - 3)) / std::sqrt(k * one_minus);
    };
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate(f, 0.0, 1.0, 1e-15);
}

double line_blowup_radius_p3_closed_form() {
    const double g = boost::math::tgamma(0.25);
    return g * g / (4.0 * std::sqrt(std::numbers::pi));
}

double explicit_biharmonic_C(double N) { return std::pow(N * (N - 4) * (N * N - 4), (N - 4) / 8.0); }

RadialJet explicit_biharmonic_jet(double N, double r) {
    const double C = explicit_biharmonic_C(N);
    const double k = (N - 4) / 2, m = N / 2;
    const double q = 1 - r * r;
    RadialJet j;
    j.r = r;
    j.u = C * std::pow(q, -k);
    j.up = 2 * k * C * r * std::pow(q, -k - 1);
    j.upp = 2 * k * C * std::pow(q, -k - 1) + 4 * k * (k + 1) * C * r * r * std::pow(q, -k - 2);
    const double K = C * (N - 4);
    j.v = K * std::pow(q, -m) * (N - 2 * r * r);
    const double P = r * (2 * m * N - 4) + r * r * r * (4 - 4 * m);
    const double dP = (2 * m * N - 4) + 3 * r * r * (4 - 4 * m);
    j.vp = K * std::pow(q, -m - 1) * P;
    j.vpp = K * (2 * (m + 1) * r * std::pow(q, -m - 2) * P + std::pow(q, -m - 1) * dP);
    return j;
}

RadialJet power_solution_jet(const ProblemParams& p, double r) {
    const Exponents e = derive_exponents(p);
    const SingularConstants c = singular_constants(p);
    const double g = e.gamma_ab, x = e.xi_ab;
    RadialJet j;
    j.r = r;
    j.u = c.A_N * std::pow(r, -g);
    j.up = -g * j.u / r;
    j.upp = g * (g + 1) * j.u / (r * r);
    j.v = c.B_N * std::pow(r, -x);
    j.vp = -x * j.v / r;
    j.vpp = x * (x + 1) * j.v / (r * r);
    return j;
}

}  // namespace largesol::oracle
