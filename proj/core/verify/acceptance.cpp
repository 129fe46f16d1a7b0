#include "largesol/verify/acceptance.hpp"

#include "largesol/asymptotics.hpp"
#include "largesol/blowcurve.hpp"
#include "largesol/errors.hpp"
#include "largesol/manifolds.hpp"
#include "largesol/orbits.hpp"
#include "largesol/params.hpp"
#include "largesol/phase.hpp"
#include "largesol/radial_ode.hpp"
#include "largesol/verify/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <memory>
#include <random>
#include <sstream>

namespace largesol::verify {

namespace {

const ProblemParams kSym{3, 0, 0, 2, 2};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    // records a named check; every check is listed in the detail line
    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        if (detail.tellp() > 0) detail << "; ";
        detail << what << (ok ? "" : " [FAIL]");
    }
};

std::string g(double x, int digits = 3) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

double rel(double x, double ref) { return std::fabs(x / ref - 1); }

// ---- 1 -----------------------------------------------------------------------------------------

void exponents(Outcome& o, std::uint64_t seed) {
    const ExactExponents e = derive_exponents(ExactParams{8, 0, 0, 1, 3});
    o.check(e.gamma == 2 && e.xi == 4 && e.gamma == Rational(8 - 4, 2) && e.xi == Rational(8, 2),
            "gamma=" + to_string(e.gamma) + " xi=" + to_string(e.xi) + " at N=8");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(1, 60), den(1, 12), w(-10, 30), n(1, 10);
    int checked = 0, bad = 0;
    while (checked < 100) {
        const Rational N = n(rng);
        const ExactParams p{N, Rational(w(rng), den(rng)), Rational(w(rng), den(rng)), Rational(num(rng), den(rng)),
                            Rational(num(rng), den(rng))};
        if (p.mu * p.delta - 1 <= 0) continue;
        const Rational lower = std::max(Rational(-2), Rational(-N));
        if (p.a <= lower || p.b <= lower) continue;
        const ExactExponents x = derive_exponents(p);
        if (!(x.gamma + 2 == p.delta * x.xi) || !(x.xi + 2 == p.mu * x.gamma)) ++bad;
        ++checked;
    }
    o.check(bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " random sets satisfy the identities exactly");
}

// ---- 2 -----------------------------------------------------------------------------------------

void constants(Outcome& o, std::uint64_t) {
    const BoundaryConstants s = boundary_constants(kSym);
    o.check(s.A1_exact && s.B1_exact && *s.A1_exact == 6 && *s.B1_exact == 6,
            "A1=" + (s.A1_exact ? to_string(*s.A1_exact) : g(s.A1)) + " B1=" + (s.B1_exact ? to_string(*s.B1_exact) : g(s.B1)));
    const BoundaryConstants c = boundary_constants(ProblemParams{1, 0, 0, 1, 3});
    o.check(c.A1_pow_D_exact && *c.A1_pow_D_exact == 120,
            "A1^2=" + (c.A1_pow_D_exact ? to_string(*c.A1_pow_D_exact) : g(c.A1_pow_D)));
    const BiharmonicConstant b = biharmonic_constant(3);
    o.check(b.A_pow_mu_minus_1_exact && *b.A_pow_mu_minus_1_exact == 120 && b.A_pow_mu_minus_1_misprint == 96,
            "biharmonic A^2=" + g(b.A_pow_mu_minus_1) + " (printed (3mu-1) variant " + g(b.A_pow_mu_minus_1_misprint) +
                ", kept as erratum)");
}

// ---- 3 -----------------------------------------------------------------------------------------

void explicit_solution(Outcome& o, std::uint64_t) {
    const double N = 8;
    const ProblemParams p = biharmonic_params(N, 3, 0);
    const double C = oracle::explicit_biharmonic_C(N);
    o.check(std::fabs(C * C - 1920) < 1e-9, "C^2=" + g(C * C, 12));
    double worst = 0;
    for (int i = 0; i <= 180; ++i) {
        const double r = 0.05 + 0.9 * i / 180;
        const auto d = ode_relative_defect(p, oracle::explicit_biharmonic_jet(N, r), Nonlinearity::Biharmonic);
        worst = std::max({worst, std::fabs(d[0]), std::fabs(d[1])});
    }
    o.check(worst < 1e-8, "max relative defect " + g(worst));

    const auto j0 = oracle::explicit_biharmonic_jet(N, 0.05);
    const auto traj = integrate(p, RadialState{j0.r, j0.u, j0.up, j0.v, j0.vp}, 0.95, {}, Nonlinearity::Biharmonic);
    double dev = 0;
    for (const auto& s : traj.samples)
        dev = std::max(dev, rel(s.state.u, oracle::explicit_biharmonic_jet(N, s.state.r).u));
    o.check(dev < 1e-8, "integrated vs explicit " + g(dev));

    const Profile uv = [N](double r) {
        const auto j = oracle::explicit_biharmonic_jet(N, r);
        return std::array<double, 2>{j.u, j.v};
    };
    const BoundaryExpansionFit f = fit_boundary_expansion(uv, p, 1, 1e-5);
    const double A2 = f.u.fitted_constant * f.u.fitted_constant;
    o.check(rel(f.u.fitted_exponent, 2) < 0.005, "fitted exponent " + g(f.u.fitted_exponent, 6));
    o.check(rel(A2, 120) < 0.01, "fitted A^2 " + g(A2, 6));
}

// ---- 4 -----------------------------------------------------------------------------------------

void particular_solution(Outcome& o, std::uint64_t) {
    const double r0 = 0.1;
    const RadialState s{r0, 2 / (r0 * r0), -4 / (r0 * r0 * r0), 2 / (r0 * r0), -4 / (r0 * r0 * r0)};
    const auto traj = integrate(kSym, s, 10.0);
    double worst = 0;
    for (const auto& smp : traj.samples) {
        const double exact = 2 / (smp.state.r * smp.state.r);
        worst = std::max({worst, rel(smp.state.u, exact), rel(smp.state.v, exact)});
    }
    o.check(traj.termination == Termination::ReachedEnd && traj.last().r == 10.0, "reached r=10");
    o.check(worst < 1e-6, "max relative deviation " + g(worst));
}

// ---- 5 -----------------------------------------------------------------------------------------

void boundary_behaviour(Outcome& o, std::uint64_t) {
    const auto t0 = std::chrono::steady_clock::now();
    const BlowupRun run = blowup_run(kSym, 1, 1);
    const BoundaryExpansionFit f = fit_boundary_expansion(run.trajectory, kSym, run.estimate.R_hat);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(rel(f.u.fitted_exponent, 2) < 0.01, "gamma_hat=" + g(f.u.fitted_exponent, 6));
    o.check(rel(f.u.fitted_constant, 6) < 0.02, "A_hat=" + g(f.u.fitted_constant, 6));
    o.check(f.correction_bounded,
            "correction ratio " + g(f.correction_inner) + " (inner) vs " + g(f.correction_outer) + " (outer)");
    o.check(secs < 5, "runtime " + g(secs) + " s");
}

// ---- 6 -----------------------------------------------------------------------------------------

void scaling_law(Outcome& o, std::uint64_t) {
    const Exponents e = derive_exponents(kSym);
    double worst = 0;
    for (auto [u0, v0] : {std::pair{1.0, 1.0}, {1.0, 0.3}, {0.3, 1.0}}) {
        const double base = rho(3, 2, 2, u0, v0);
        for (double lam : {2.0, 0.5}) {
            const double r = rho(3, 2, 2, std::pow(lam, e.gamma) * u0, std::pow(lam, e.xi) * v0);
            worst = std::max(worst, std::fabs(lam * r / base - 1));
        }
    }
    o.check(worst < 1e-3, "max |lambda rho(lambda data)/rho - 1| = " + g(worst));
}

// ---- 7 -----------------------------------------------------------------------------------------

void first_integral(Outcome& o, std::uint64_t) {
    const ProblemParams p{1, 0, 0, 3, 3};
    const BlowupRun run = blowup_run(p, 1, 1);
    const FirstIntegralDrift d = first_integral_drift(run.trajectory);
    o.check(d.max_scaled_drift < 1e-9, "relative drift " + g(d.max_scaled_drift));
    const double want = oracle::line_blowup_radius(3, 1);
    const double got = run.estimate.R_hat;
    o.check(rel(got, want) < 1e-6, "rho(1,1)=" + g(got, 12) + " vs quadrature " + g(want, 12));
}

// ---- 8 -----------------------------------------------------------------------------------------

void m0_spectrum_check(Outcome& o, std::uint64_t) {
    const M0Spectrum s = m0_spectrum(kSym);
    const std::complex<double> want[4] = {{(3 - std::sqrt(17.0)) / 2, 0},
                                          {(3 + std::sqrt(17.0)) / 2, 0},
                                          {1.5, std::sqrt(15.0) / 2},
                                          {1.5, -std::sqrt(15.0) / 2}};
    double worst = 0;
    for (const auto& w : want) {
        double best = INFINITY;
        for (const auto& z : s.roots) best = std::min(best, std::abs(z - w));
        worst = std::max(worst, best);
    }
    o.check(worst < 1e-10, "root error " + g(worst));
    o.check(s.lambda4 > 2 && s.structure_holds(), "lambda4=" + g(s.lambda4, 6) + " at delta=mu=2");

    // lambda4 > 2 is the delta = mu = 2 value of the general bound lambda4 > max(X0, Y0, |Z0|, |W0|),
    // which is what the grid checks
    int tested = 0, violations = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const ProblemParams p{3, 0, 0, 1.2 + 2.8 * i / 9, 1.2 + 2.8 * j / 9};
            if (!(p.D() > 0) || !power_solution_exists(p)) continue;
            const M0Spectrum m = m0_spectrum(p, false);
            ++tested;
            const bool ok = m.unique_negative_real && m.lambda4_dominant &&
                            m.roots[0].real() > 0 && m.roots[1].real() > 0 && m.sign_pattern;
            if (!ok) ++violations;
        }
    o.check(violations == 0 && tested > 0,
            std::to_string(violations) + " violations on " + std::to_string(tested) + " admissible grid points");
}

// ---- 9 -----------------------------------------------------------------------------------------

void dulac(Outcome& o, std::uint64_t seed) {
    const DulacCertificate c = dulac_certificate(2, 2);
    o.check(c.M_exact && *c.M_exact == Rational(-5, 3), "M=" + (c.M_exact ? to_string(*c.M_exact) : g(c.M)));

    int tested = 0, bad = 0;
    for (int i = 0; i < 25; ++i)
        for (int j = 0; j < 25; ++j) {
            const double d = 0.2 + 4.8 * i / 24, m = 0.2 + 4.8 * j / 24;
            if (!(d * m - 1 > 0)) continue;
            ++tested;
            if (!(dulac_certificate(d, m).M < 0)) ++bad;
        }
    o.check(bad == 0, "M < 0 at " + std::to_string(tested - bad) + "/" + std::to_string(tested) + " grid points");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> P(0.2, 5), U(0.2, 3);
    double worst = 0;
    for (int k = 0; k < 20;) {
        const double d = P(rng), m = P(rng);
        if (!(d * m - 1 > 0)) continue;
        ++k;
        const DulacCertificate cc = dulac_certificate(d, m);
        const Vec2 xy{U(rng), 1 / (d + 1) + U(rng)};
        auto BF = [&](Vec2 z, int i) { return dulac_multiplier(d, cc.p, cc.q, z) * reduced2_field(d, m, z)[i]; };
        // fourth-order central differences
        auto diff = [&](int i) {
            const double h = 1e-3;
            auto at = [&](double s) {
                Vec2 z = xy;
                z[i] += s;
                return BF(z, i);
            };
            return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
        };
        const double fd = (diff(0) + diff(1)) / dulac_multiplier(d, cc.p, cc.q, xy);
        const double sym = dulac_divergence_ratio(d, m, cc.p, cc.q, xy);
        worst = std::max({worst, std::fabs(fd - sym) / (1 + std::fabs(sym)), std::fabs(sym - cc.M) / (1 + std::fabs(cc.M))});
    }
    o.check(worst < 1e-8, "symbolic vs finite-difference divergence " + g(worst));
}

// ---- 10 ----------------------------------------------------------------------------------------

void connecting(Outcome& o, std::uint64_t) {
    const ConnectingOrbitReport r = connecting_orbit(kSym);
    o.check(r.alpha_limit.label == FixedPointLabel::A0 && r.alpha_limit.distance < 1e-3,
            "alpha-limit " + (r.alpha_limit.label ? to_string(*r.alpha_limit.label) : std::string("none")) +
                " at distance " + g(r.alpha_limit.distance));
    const int wrong = r.wrong_steps[0] + r.wrong_steps[1] + r.wrong_steps[2] + r.wrong_steps[3];
    o.check(wrong == 0 && r.above_N_minus_2, std::to_string(wrong) + " non-monotone steps");
    double var = INFINITY;
    for (const auto& c : r.origin.candidates)
        if (c.id == "A0") var = std::max(c.variation_u, c.variation_v);
    o.check(r.origin.case_id == "A0" && var < 0.01 && r.origin.alpha > 0,
            "r u -> " + g(r.origin.alpha) + " (variation " + g(var) + ")");
    o.check(std::fabs(r.forward_u - 1) < 0.01 && std::fabs(r.forward_v - 1) < 0.01,
            "r^2 u / 2 -> " + g(r.forward_u, 8));
}

// ---- 11 ----------------------------------------------------------------------------------------

void reduced_dynamics(Outcome& o, std::uint64_t seed) {
    const ProblemParams line{1, 0, 0, 2, 2};
    auto run = std::make_shared<BlowupRun>(blowup_run(line, 1, 1));
    auto tr = std::shared_ptr<const RadialTrajectory>(run, &run->trajectory);
    const BoundaryTrajectory bt = to_boundary_trajectory(tr, run->estimate.R_hat, 300);
    const double k = measured_bound_k(bt, 0);
    // 1/k <= X, Y, |Z| <= k gives x = -X/Z, y = -Y/Z in [1/k^2, k^2]
    const double lo = 1 / (k * k), hi = k * k, ylo = std::max(lo, 1 / (line.delta + 1));
    const Vec2 m0 = reduced2_fixed_points(line.delta, line.mu).m0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> X(lo, hi), Y(ylo, hi);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const Vec2 start{X(rng), Y(rng)};
        worst = std::max(worst, integrate_reduced2(line.delta, line.mu, start, 80).final_distance);
    }
    o.check(worst < 1e-6, "k=" + g(k) + "; worst distance to m0 " + g(worst) + " over 20 starts");
    o.check(std::fabs(m0[0] - 2.0 / 3) + std::fabs(m0[1] - 2.0 / 3) < 1e-15, "m0=(2/3,2/3)");
    const auto l = reduced_m0_spectrum(2, 2);
    const double err = std::max(std::abs(l[0] - std::complex<double>(-5.0 / 6, -std::sqrt(47.0) / 6)),
                                std::abs(l[1] - std::complex<double>(-5.0 / 6, std::sqrt(47.0) / 6)));
    o.check(err < 1e-10, "planar roots error " + g(err));
}

// ---- 12 ----------------------------------------------------------------------------------------

void curve(Outcome& o, std::uint64_t) {
    const CurveTrace c = trace_S(3, 2, 2, 33);
    o.check(c.points.size() == 33, std::to_string(c.points.size()) + " points");
    o.check(c.max_rho_residual < 1e-3, "max |rho - 1| " + g(c.max_rho_residual));
    o.check(c.max_mirror_error < 1e-6, "mirror " + g(c.max_mirror_error));
    o.check(c.max_outside < 1e-6, "outside box " + g(c.max_outside));
}

// ---- 13 ----------------------------------------------------------------------------------------

void kelvin(Outcome& o, std::uint64_t) {
    const ExactParams ep{3, 0, 0, 2, 2};
    const ExactParams ekp = *to_exact(kelvin_params(to_double(ep)));
    const Rational lhs = derive_exponents(ekp).gamma_ab, rhs = ep.N - 2 - derive_exponents(ep).gamma_ab;
    o.check(lhs == rhs, "image exponent " + to_string(lhs) + " = N-2-gamma_ab");

    std::vector<RadialJet> jets;
    for (double r : {0.5, 1.0, 2.0}) jets.push_back(oracle::power_solution_jet(kSym, r));
    const auto kj = kelvin_transform(jets, kSym.N);
    const double slope = std::log(kj[2].u / kj[0].u) / std::log(kj[2].r / kj[0].r);
    o.check(std::fabs(slope + to_double(rhs)) < 1e-12, "measured exponent " + g(-slope, 15));

    const auto traj = integrate_regular(kSym, 1, 1, 1.0);
    const auto k = kelvin_transform(traj);
    const ProblemParams kp = kelvin_params(kSym);
    double worst = 0;
    for (const auto& j : k) {
        const auto d = ode_relative_defect(kp, j);
        worst = std::max({worst, std::fabs(d[0]), std::fabs(d[1])});
    }
    o.check(worst < 1e-8, "image defect " + g(worst));
    const auto back = kelvin_transform(k, kSym.N);
    const auto orig = traj.jets();
    double dev = back.size() == orig.size() ? 0 : INFINITY;
    for (std::size_t i = 0; i < orig.size() && i < back.size(); ++i)
        dev = std::max({dev, std::fabs(back[i].r - orig[i].r) / orig[i].r, std::fabs(back[i].u - orig[i].u) / orig[i].u,
                        std::fabs(back[i].v - orig[i].v) / orig[i].v,
                        std::fabs(back[i].up - orig[i].up) / (std::fabs(orig[i].up) + orig[i].u / orig[i].r),
                        std::fabs(back[i].vp - orig[i].vp) / (std::fabs(orig[i].vp) + orig[i].v / orig[i].r)});
    o.check(dev < 1e-12, "double transform " + g(dev));
}

// ---- 14 ----------------------------------------------------------------------------------------

void regular_manifold(Outcome& o, std::uint64_t) {
    const RegularLaunchReport r = regular_launch(kSym, FixedPointLabel::R0);
    o.check(std::fabs(r.limit_ratio - 1) < 0.01,
            "u0=" + g(r.data, 6) + "; (v/r^2)/(u0^2/6)=" + g(r.limit_ratio, 8));
    o.check(r.cross_validation < 1e-4, "cross-validation " + g(r.cross_validation));
}

struct Entry {
    const char* name;
    void (*run)(Outcome&, std::uint64_t);
};

const Entry kEntries[kCriterionCount] = {
    {"exponents", exponents},
    {"constants", constants},
    {"explicit biharmonic solution", explicit_solution},
    {"particular solution", particular_solution},
    {"boundary expansion", boundary_behaviour},
    {"scaling law", scaling_law},
    {"first integral", first_integral},
    {"M0 spectrum", m0_spectrum_check},
    {"Dulac certificate", dulac},
    {"connecting orbit", connecting},
    {"planar reduction", reduced_dynamics},
    {"curve S", curve},
    {"Kelvin transform", kelvin},
    {"regular-solution manifold", regular_manifold},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
    if (id < 1 || id > kCriterionCount) throw DomainError("1 <= criterion <= 14", std::to_string(id));
    const Entry& e = kEntries[id - 1];
    CriterionResult res;
    res.id = id;
    res.name = e.name;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        e.run(o, seed);
        res.pass = o.pass;
        res.detail = o.detail.str();
    } catch (const std::exception& ex) {
        res.pass = false;
        res.detail = o.detail.str();
        res.detail += (res.detail.empty() ? "" : "; ") + std::string("error: ") + ex.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<CriterionResult> run_suite(std::uint64_t seed, const std::vector<int>& ids) {
    std::vector<int> todo = ids;
    if (todo.empty())
        for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
    std::vector<CriterionResult> out;
    for (int id : todo) out.push_back(run_criterion(id, seed));
    return out;
}

std::string format_line(const CriterionResult& r) {
    char head[16];
    std::snprintf(head, sizeof head, "%02d", r.id);
    return std::string(r.pass ? "[PASS] " : "[FAIL] ") + head + " " + r.name + ": " + r.detail;
}

std::string markdown_table(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    os << "| # | claim | result | detail |\n|---|---|---|---|\n";
    for (const auto& r : results) {
        std::string d = r.detail;
        std::replace(d.begin(), d.end(), '|', '/');
        os << "| " << r.id << " | " << r.name << " | " << (r.pass ? "pass" : "FAIL") << " | " << d << " |\n";
    }
    return os.str();
}

}  // namespace largesol::verify
