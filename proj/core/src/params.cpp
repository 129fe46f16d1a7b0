#include "largesol/params.hpp"

#include "largesol/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace largesol {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

std::optional<Rational> exact_root_of(const std::optional<Rational>& value, const Rational& D) {
    if (!value) return std::nullopt;
    return exact_pow(*value, Rational(1) / D);
}

}  // namespace

std::optional<ExactParams> to_exact(const ProblemParams& p) {
    auto N = to_rational(p.N), a = to_rational(p.a), b = to_rational(p.b);
    auto d = to_rational(p.delta), m = to_rational(p.mu);
    if (!N || !a || !b || !d || !m) return std::nullopt;
    return ExactParams{*N, *a, *b, *d, *m};
}

ProblemParams to_double(const ExactParams& p) {
    return {to_double(p.N), to_double(p.a), to_double(p.b), to_double(p.delta), to_double(p.mu)};
}

void require_weights(const ProblemParams& p) {
    if (!(p.N >= 1)) throw DomainError("N >= 1", "N = " + fmt(p.N));
    const double lo = std::max(-2.0, -p.N);
    if (!(p.a > lo) || !(p.b > lo))
        throw DomainError("a, b > max(-2, -N)",
                          "a = " + fmt(p.a) + ", b = " + fmt(p.b) + ", bound " + fmt(lo));
}

void require_superlinear(const ProblemParams& p) {
    if (!(p.delta > 0) || !(p.mu > 0))
        throw DomainError("delta, mu > 0", "delta = " + fmt(p.delta) + ", mu = " + fmt(p.mu));
    if (!(p.D() > 0))
        throw DomainError("mu*delta - 1 > 0", "mu*delta - 1 = " + fmt(p.D()));
}

void require_regular(const ProblemParams& p) {
    require_weights(p);
    if (!(p.delta > 0) || !(p.mu > 0))
        throw DomainError("delta, mu > 0", "delta = " + fmt(p.delta) + ", mu = " + fmt(p.mu));
    if (p.D() == 0) throw DomainError("mu*delta - 1 != 0", "mu*delta = 1");
}

void require_blowup(const ProblemParams& p) {
    require_weights(p);
    require_superlinear(p);
}

ExactExponents derive_exponents(const ExactParams& p) {
    ExactExponents e;
    e.D = p.mu * p.delta - 1;
    if (e.D == 0) throw DomainError("mu*delta - 1 != 0", "mu*delta = 1");
    e.gamma = 2 * (1 + p.delta) / e.D;
    e.xi = 2 * (1 + p.mu) / e.D;
    e.gamma_ab = ((2 + p.a) + (2 + p.b) * p.delta) / e.D;
    e.xi_ab = ((2 + p.b) + (2 + p.a) * p.mu) / e.D;
    return e;
}

Exponents derive_exponents(const ProblemParams& p) {
    const double D = p.D();
    if (D == 0) throw DomainError("mu*delta - 1 != 0", "mu*delta = 1");
    Exponents e;
    e.D = D;
    e.gamma = 2 * (1 + p.delta) / D;
    e.xi = 2 * (1 + p.mu) / D;
    e.gamma_ab = ((2 + p.a) + (2 + p.b) * p.delta) / D;
    e.xi_ab = ((2 + p.b) + (2 + p.a) * p.mu) / D;
    if (auto q = to_exact(p)) {
        e.exact = derive_exponents(*q);
        // Prefer the correctly rounded values of the exact rationals.
        e.gamma = to_double(e.exact->gamma);
        e.xi = to_double(e.exact->xi);
        e.gamma_ab = to_double(e.exact->gamma_ab);
        e.xi_ab = to_double(e.exact->xi_ab);
    }
    return e;
}

BoundaryConstants boundary_constants(const ProblemParams& p) {
    require_superlinear(p);
    const Exponents e = derive_exponents(p);
    BoundaryConstants c;
    const double gg = e.gamma * (e.gamma + 1), xx = e.xi * (e.xi + 1);
    c.A1_pow_D = gg * std::pow(xx, p.delta);
    c.B1_pow_D = xx * std::pow(gg, p.mu);
    c.A1 = std::pow(c.A1_pow_D, 1.0 / e.D);
    c.B1 = std::pow(c.B1_pow_D, 1.0 / e.D);

    if (e.exact) {
        const auto q = *to_exact(p);
        const Rational egg = e.exact->gamma * (e.exact->gamma + 1);
        const Rational exx = e.exact->xi * (e.exact->xi + 1);
        if (auto t = exact_pow(exx, q.delta)) c.A1_pow_D_exact = egg * *t;
        if (auto t = exact_pow(egg, q.mu)) c.B1_pow_D_exact = exx * *t;
        c.A1_exact = exact_root_of(c.A1_pow_D_exact, e.exact->D);
        c.B1_exact = exact_root_of(c.B1_pow_D_exact, e.exact->D);
        if (c.A1_exact) c.A1 = to_double(*c.A1_exact);
        if (c.B1_exact) c.B1 = to_double(*c.B1_exact);
    }
    return c;
}

bool power_solution_exists(const ProblemParams& p) {
    if (p.N == 1 || p.N == 2) return true;
    const Exponents e = derive_exponents(p);
    return std::min(e.gamma_ab, e.xi_ab) > p.N - 2;
}

SingularConstants singular_constants(const ProblemParams& p) {
    require_blowup(p);
    const Exponents e = derive_exponents(p);
    if (!power_solution_exists(p))
        throw DomainError("min(gamma_ab, xi_ab) > N - 2 or N in {1, 2}",
                          "min(gamma_ab, xi_ab) = " + fmt(std::min(e.gamma_ab, e.xi_ab)) +
                              " <= N - 2 = " + fmt(p.N - 2));
    SingularConstants c;
    const double gu = e.gamma_ab * (e.gamma_ab - p.N + 2);
    const double gv = e.xi_ab * (e.xi_ab - p.N + 2);
    c.A_N_pow_D = gu * std::pow(gv, p.delta);
    c.B_N_pow_D = gv * std::pow(gu, p.mu);
    c.A_N = std::pow(c.A_N_pow_D, 1.0 / e.D);
    c.B_N = std::pow(c.B_N_pow_D, 1.0 / e.D);
    if (e.exact) {
        const auto q = *to_exact(p);
        const Rational egu = e.exact->gamma_ab * (e.exact->gamma_ab - q.N + 2);
        const Rational egv = e.exact->xi_ab * (e.exact->xi_ab - q.N + 2);
        if (auto t = exact_pow(egv, q.delta)) c.A_N_pow_D_exact = egu * *t;
        if (auto t = exact_pow(egu, q.mu)) c.B_N_pow_D_exact = egv * *t;
        if (auto r = exact_root_of(c.A_N_pow_D_exact, e.exact->D)) c.A_N = to_double(*r);
        if (auto r = exact_root_of(c.B_N_pow_D_exact, e.exact->D)) c.B_N = to_double(*r);
    }
    return c;
}

BiharmonicConstant biharmonic_constant(double mu, double b) {
    if (!(mu > 1)) throw DomainError("mu > 1", "mu = " + fmt(mu));
    if (!(b > -2)) throw DomainError("a, b > max(-2, -N)", "b = " + fmt(b));
    // Same as boundary_constants with delta = 1: then gamma = 4/(mu-1), xi = 2(mu+1)/(mu-1).
    const ProblemParams p{1, 0, b, 1, mu};
    const BoundaryConstants bc = boundary_constants(p);
    BiharmonicConstant c;
    c.exponent = 4.0 / (mu - 1);
    c.A = bc.A1;
    c.A_pow_mu_minus_1 = bc.A1_pow_D;
    c.A_pow_mu_minus_1_exact = bc.A1_pow_D_exact;
    const double m1 = mu - 1;
    c.A_pow_mu_minus_1_misprint = 8 * (mu + 3) * (mu + 1) * (3 * mu - 1) / (m1 * m1 * m1 * m1);
    c.A_misprint = std::pow(c.A_pow_mu_minus_1_misprint, 1.0 / m1);
    return c;
}

double biharmonic_power_constant_pow(double N, double mu, double b) {
    const double m1 = mu - 1;
    return (4 + b) * (N + 2 + b - (N - 2) * mu) * (2 * mu + 2 + b) * (N + b - (N - 4) * mu) /
           (m1 * m1 * m1 * m1);
}

ProblemParams kelvin_params(const ProblemParams& p) {
    ProblemParams k = p;
    k.a = (p.N - 2) * p.delta - (p.N + 2 + p.a);
    k.b = (p.N - 2) * p.mu - (p.N + 2 + p.b);
    return k;
}

RCorrection general_R_correction(const ProblemParams& p, double R) {
    if (!(R > 0)) throw DomainError("R > 0", "R = " + fmt(R));
    const Exponents e = derive_exponents(p);
    return {std::pow(R, e.gamma - e.gamma_ab), std::pow(R, e.xi - e.xi_ab)};
}

std::string describe(const ProblemParams& p) {
    return "N=" + fmt(p.N) + " a=" + fmt(p.a) + " b=" + fmt(p.b) + " delta=" + fmt(p.delta) +
           " mu=" + fmt(p.mu);
}

}  // namespace largesol
