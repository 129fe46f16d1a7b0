// Start of a regular solution near r = 0 through the integral form
//     u(r) = u0 + int_0^r t^(1-N) int_0^t s^(N-1+a) f(s) ds dt
// which after s = r x becomes
//     u(r)  = u0 + r^(2+a) int_0^1 x^(N-1+a) k(x) f(r x) dx,   k(x) = (x^(2-N) - 1)/(N-2)
//     u'(r) =      r^(1+a) int_0^1 x^(N-1+a) f(r x) dx
// with k(x) = -ln x when N = 2.

#include "largesol/errors.hpp"
#include "largesol/radial_ode.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <functional>
#include <sstream>

namespace largesol {

namespace {

struct ValueAndSlope {
    double value = 0;
    double slope = 0;
};

class Picard {
public:
    Picard(const ProblemParams& p, Nonlinearity mode, double u0, double v0)
        : p_(p), mode_(mode), u0_(u0), v0_(v0), quad_(10) {}

    double gu(double v) const {
        if (mode_ == Nonlinearity::Biharmonic) return v;
        return v > 0 ? std::pow(v, p_.delta) : 0.0;
    }
    double gv(double u) const {
        if (mode_ == Nonlinearity::Biharmonic) return std::pow(std::fabs(u), p_.mu);
        return u > 0 ? std::pow(u, p_.mu) : 0.0;
    }

    // First iterate in closed form.
    ValueAndSlope u1(double r) const {
        const double c = gu(v0_);
        return {u0_ + c * std::pow(r, 2 + p_.a) / ((2 + p_.a) * (p_.N + p_.a)),
                c * std::pow(r, 1 + p_.a) / (p_.N + p_.a)};
    }
    ValueAndSlope v1(double r) const {
        const double c = gv(u0_);
        return {v0_ + c * std::pow(r, 2 + p_.b) / ((2 + p_.b) * (p_.N + p_.b)),
                c * std::pow(r, 1 + p_.b) / (p_.N + p_.b)};
    }

    // Integral operator with weight exponent c applied to f on [0, r].
    // Inside the nested third iterate only the value is needed, and it enters multiplied by
    // r^(2+c) <= eps^2, so a looser tolerance there is enough.
    ValueAndSlope apply(const std::function<double(double)>& f, double base, double c, double r,
                        bool slope = true, double tol = 1e-15) const {
        const double N = p_.N;
        auto kernel_value = [&](double x) {
            if (x <= 0) return 0.0;
            const double fx = f(r * x);
            if (N == 2) return -std::pow(x, 1 + c) * std::log(x) * fx;
            return (std::pow(x, 1 + c) - std::pow(x, N - 1 + c)) / (N - 2) * fx;
        };
        auto kernel_slope = [&](double x) {
            if (x <= 0) return 0.0;
            return std::pow(x, N - 1 + c) * f(r * x);
        };
        const double iv = quad_.integrate(kernel_value, 0.0, 1.0, tol);
        const double is = slope ? quad_.integrate(kernel_slope, 0.0, 1.0, tol) : 0.0;
        return {base + std::pow(r, 2 + c) * iv, std::pow(r, 1 + c) * is};
    }

    ValueAndSlope u2(double r) const {
        return apply([this](double s) { return gu(v1(s).value); }, u0_, p_.a, r);
    }
    ValueAndSlope v2(double r) const {
        return apply([this](double s) { return gv(u1(s).value); }, v0_, p_.b, r);
    }
    ValueAndSlope u3(double r) const {
        return apply([this](double s) { return gu(v2_value(s)); }, u0_, p_.a, r);
    }
    ValueAndSlope v3(double r) const {
        return apply([this](double s) { return gv(u2_value(s)); }, v0_, p_.b, r);
    }
    double u2_value(double r) const {
        return apply([this](double s) { return gu(v1(s).value); }, u0_, p_.a, r, false, 1e-12).value;
    }
    double v2_value(double r) const {
        return apply([this](double s) { return gv(u1(s).value); }, v0_, p_.b, r, false, 1e-12).value;
    }

private:
    ProblemParams p_;
    Nonlinearity mode_;
    double u0_, v0_;
    mutable boost::math::quadrature::tanh_sinh<double> quad_;
};

// Largest change between iterates 2 and 3, in units of the local tolerance.
double picard_change(const Picard& pic, double eps, const IntegratorConfig& cfg, RadialState& out) {
    const auto u2 = pic.u2(eps), v2 = pic.v2(eps);
    const auto u3 = pic.u3(eps), v3 = pic.v3(eps);
    auto scaled = [&](double a, double b) { return std::fabs(a - b) / (cfg.abs_tol + cfg.rel_tol * std::fabs(a)); };
    out = RadialState{eps, u2.value, u2.slope, v2.value, v2.slope};
    return std::max({scaled(u2.value, u3.value), scaled(u2.slope, u3.slope), scaled(v2.value, v3.value),
                     scaled(v2.slope, v3.slope)});
}

void check_data(const ProblemParams& p, double u0, double v0, Nonlinearity mode) {
    require_weights(p);
    if (u0 == 0 && v0 == 0) throw DomainError("(u0, v0) != (0, 0)", "the trivial solution has no series start");
    if (mode == Nonlinearity::PositiveCone && (u0 < 0 || v0 < 0))
        throw DomainError("u0, v0 >= 0", "initial data must be nonnegative");
}

double natural_radius(const ProblemParams& p, double u0, double v0, const Picard& pic) {
    double L = std::numeric_limits<double>::infinity();
    const double cu = pic.gu(v0), cv = pic.gv(u0);
    if (u0 != 0 && cu != 0)
        L = std::min(L, std::pow(std::fabs(u0) * (2 + p.a) * (p.N + p.a) / std::fabs(cu), 1.0 / (2 + p.a)));
    if (v0 != 0 && cv != 0)
        L = std::min(L, std::pow(std::fabs(v0) * (2 + p.b) * (p.N + p.b) / std::fabs(cv), 1.0 / (2 + p.b)));
    return std::isfinite(L) ? L : 1.0;
}

}  // namespace

RadialState series_start(const ProblemParams& p, double u0, double v0, double eps,
                         const IntegratorConfig& cfg, Nonlinearity mode) {
    check_data(p, u0, v0, mode);
    if (!(eps > 0)) throw DomainError("eps > 0", "series radius must be positive");
    const Picard pic(p, mode, u0, v0);
    RadialState s;
    const double change = picard_change(pic, eps, cfg, s);
    if (!(change <= 1.0)) {
        std::ostringstream os;
        os << "Picard iteration does not contract at eps = " << eps << " (next iterate moves "
           << change << " tolerance units)";
        throw ContractionError(os.str());
    }
    return s;
}

SeriesStart auto_series_start(const ProblemParams& p, double u0, double v0, const IntegratorConfig& cfg,
                              Nonlinearity mode) {
    check_data(p, u0, v0, mode);
    const Picard pic(p, mode, u0, v0);
    double eps = cfg.series_start_radius > 0 ? cfg.series_start_radius : 1e-3 * natural_radius(p, u0, v0, pic);
    for (int attempt = 0; attempt < 30; ++attempt, eps *= 0.25) {
        RadialState s;
        const double change = picard_change(pic, eps, cfg, s);
        if (change <= 1.0) return {s, eps, change};
    }
    throw ContractionError("Picard iteration failed to contract down to eps = " + std::to_string(eps));
}

}  // namespace largesol
