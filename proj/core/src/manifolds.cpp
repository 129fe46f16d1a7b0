#include "largesol/manifolds.hpp"

#include "largesol/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace largesol {

namespace {

using cd = std::complex<double>;
using L = FixedPointLabel;

template <class T>
std::array<T, 4> coords_of(L l, const T& N, const T& a, const T& b, const T& delta, const T& mu,
                           const T& gab, const T& xab) {
    const T n2 = N - 2;
    const T zero(0);
    switch (l) {
        case L::O: return {zero, zero, zero, zero};
        case L::M0: return {gab, xab, n2 - gab, n2 - xab};
        case L::N0: return {zero, zero, N + a, N + b};
        case L::R0: return {zero, -(2 + b), N + a + (2 + b) * delta, N + b};
        case L::S0: return {-(2 + a), zero, N + a, N + b + (2 + a) * mu};
        case L::A0: return {n2, n2, zero, zero};
        case L::G0: return {n2, zero, zero, N + b - n2 * mu};
        case L::H0: return {zero, n2, N + a - n2 * delta, zero};
        case L::P0: return {n2, n2 * mu - 2 - b, zero, N + b - n2 * mu};
        case L::Q0: return {n2 * delta - 2 - a, n2, N + a - n2 * delta, zero};
        case L::I0: return {n2, zero, zero, zero};
        case L::J0: return {zero, n2, zero, zero};
        case L::K0: return {zero, zero, N + a, zero};
        case L::L0: return {zero, zero, zero, N + b};
        case L::C0: return {zero, -(2 + b), zero, N + b};
        case L::D0: return {-(2 + a), zero, N + a, zero};
    }
    return {zero, zero, zero, zero};
}

std::optional<std::array<double, 4>> closed_form_eigenvalues(const ProblemParams& p, L l) {
    const double N = p.N, a = p.a, b = p.b, d = p.delta, m = p.mu, n2 = N - 2;
    switch (l) {
        case L::O: return std::array<double, 4>{-n2, -n2, N + a, N + b};
        case L::N0: return std::array<double, 4>{2 + a, 2 + b, -(N + a), -(N + b)};
        case L::R0: return std::array<double, 4>{2 + a + d * (2 + b), -(2 + b), -(N + a + (2 + b) * d), -(N + b)};
        case L::S0: return std::array<double, 4>{2 + b + m * (2 + a), -(2 + a), -(N + b + (2 + a) * m), -(N + a)};
        case L::A0: return std::array<double, 4>{n2, n2, N + a - n2 * d, N + b - n2 * m};
        case L::G0: return std::array<double, 4>{n2, 2 + b - n2 * m, N + a, n2 * m - N - b};
        case L::H0: return std::array<double, 4>{n2, 2 + a - n2 * d, N + b, n2 * d - N - a};
        case L::P0: {
            const double Ys = n2 * m - 2 - b, Ws = N + b - n2 * m;
            return std::array<double, 4>{n2, Ys, N + a - d * Ys, -Ws};
        }
        case L::Q0: {
            const double Xs = n2 * d - 2 - a, Zs = N + a - n2 * d;
            return std::array<double, 4>{n2, Xs, N + b - m * Xs, -Zs};
        }
        default: return std::nullopt;
    }
}

bool is_real(const cd& z) { return std::fabs(z.imag()) <= 1e-9 * (1 + std::abs(z)); }

void sort_spectrum(CVec4& ev, std::array<CVec4, 4>* vecs) {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
        const bool ri = is_real(ev[i]), rj = is_real(ev[j]);
        if (ri != rj) return ri;
        if (ev[i].real() != ev[j].real()) return ev[i].real() < ev[j].real();
        return ev[i].imag() < ev[j].imag();
    });
    CVec4 e2;
    std::array<CVec4, 4> v2;
    for (int k = 0; k < 4; ++k) {
        e2[k] = ev[idx[k]];
        if (vecs) v2[k] = (*vecs)[idx[k]];
    }
    ev = e2;
    if (vecs) *vecs = v2;
}

CVec4 normalize(const Eigen::Vector4cd& x) {
    int big = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(x[i]) > std::abs(x[big]) * (1 + 1e-12)) big = i;
    const cd phase = std::abs(x[big]) / x[big];
    const Eigen::Vector4cd y = x * phase / x.norm();
    CVec4 out;
    for (int i = 0; i < 4; ++i) out[i] = y[i];
    return out;
}

Eigen::Matrix4d to_eigen(const Mat4& J) {
    Eigen::Matrix4d M;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M(i, j) = J[i][j];
    return M;
}

/// Two steps of shifted inverse iteration started from `x`.
Eigen::Vector4cd inverse_iteration(const Eigen::Matrix4d& J, cd lambda, Eigen::Vector4cd x) {
    const double scale = 1 + J.cwiseAbs().maxCoeff();
    const cd shift = lambda + cd(1e-10 * scale, 0);
    const Eigen::Matrix4cd A = J.cast<cd>() - shift * Eigen::Matrix4cd::Identity();
    Eigen::FullPivLU<Eigen::Matrix4cd> lu(A);
    for (int it = 0; it < 2; ++it) {
        Eigen::Vector4cd y = lu.solve(x);
        if (!y.allFinite() || y.norm() == 0) break;
        x = y / y.norm();
    }
    return x;
}

/// Roots of a monic polynomial x^n + c[n-1] x^(n-1) + ... + c[0] through the companion matrix,
/// polished by Newton's method.
std::vector<cd> companion_roots(const std::vector<double>& c) {
    const int n = static_cast<int>(c.size());
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -c[i];
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
    std::vector<cd> roots(n);
    for (int i = 0; i < n; ++i) {
        cd z = es.eigenvalues()[i];
        for (int it = 0; it < 6; ++it) {
            cd f = 1, df = 0;
            for (int k = n - 1; k >= 0; --k) {
                df = df * z + f;
                f = f * z + c[k];
            }
            if (df == cd(0)) break;
            const cd step = f / df;
            z -= step;
            if (std::abs(step) <= 1e-16 * (1 + std::abs(z))) break;
        }
        roots[i] = z;
    }
    return roots;
}

}  // namespace

std::string to_string(FixedPointLabel l) {
    static const char* names[] = {"O", "M0", "N0", "R0", "S0", "A0", "G0", "H0",
                                  "P0", "Q0", "I0", "J0", "K0", "L0", "C0", "D0"};
    return names[static_cast<int>(l)];
}

FixedPointLabel parse_fixed_point(const std::string& s) {
    std::string u = s;
    for (char& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (L l : kAllFixedPoints)
        if (to_string(l) == u) return l;
    throw DomainError("known fixed point label", "unknown label '" + s + "'");
}

Vec4 fixed_point_coords(const ProblemParams& p, FixedPointLabel l) {
    double gab = NAN, xab = NAN;
    if (p.D() != 0) {
        const Exponents e = derive_exponents(p);
        gab = e.gamma_ab;
        xab = e.xi_ab;
    }
    return coords_of<double>(l, p.N, p.a, p.b, p.delta, p.mu, gab, xab);
}

std::optional<std::array<Rational, 4>> fixed_point_exact_coords(const ExactParams& p, FixedPointLabel l) {
    Rational gab = 0, xab = 0;
    if (l == L::M0) {
        if (p.mu * p.delta - 1 == 0) return std::nullopt;
        const ExactExponents e = derive_exponents(p);
        gab = e.gamma_ab;
        xab = e.xi_ab;
    }
    return coords_of<Rational>(l, p.N, p.a, p.b, p.delta, p.mu, gab, xab);
}

std::array<Rational, 4> origin_field_exact(const ExactParams& p, const std::array<Rational, 4>& P) {
    const auto& [X, Y, Z, W] = P;
    const Rational n2 = p.N - 2;
    return {X * (X - n2 + Z), Y * (Y - n2 + W), Z * (p.N + p.a - p.delta * Y - Z),
            W * (p.N + p.b - p.mu * X - W)};
}

Linearization linearization_at(const ProblemParams& p, const Vec4& P) {
    Linearization lin;
    lin.jacobian = origin_jacobian(p, P);
    const Eigen::Matrix4d J = to_eigen(lin.jacobian);
    Eigen::EigenSolver<Eigen::Matrix4d> es(J, true);
    for (int k = 0; k < 4; ++k) {
        cd lam = es.eigenvalues()[k];
        if (is_real(lam)) lam = cd(lam.real(), 0);
        lin.eigenvalues[k] = lam;
        lin.eigenvectors[k] = normalize(inverse_iteration(J, lam, es.eigenvectors().col(k)));
    }
    sort_spectrum(lin.eigenvalues, &lin.eigenvectors);
    return lin;
}

Linearization linearization(const ProblemParams& p, FixedPointLabel l) {
    const Vec4 P = fixed_point_coords(p, l);
    for (double c : P)
        if (!std::isfinite(c)) throw DomainError("mu*delta - 1 != 0", to_string(l) + " is undefined");
    Linearization lin = linearization_at(p, P);
    lin.closed_form = closed_form_eigenvalues(p, l);
    if (lin.closed_form) {
        std::array<double, 4> cf = *lin.closed_form;
        std::sort(cf.begin(), cf.end());
        std::array<double, 4> num;
        for (int k = 0; k < 4; ++k) num[k] = lin.eigenvalues[k].real();
        std::sort(num.begin(), num.end());
        double mis = 0;
        for (int k = 0; k < 4; ++k) mis = std::max(mis, std::fabs(cf[k] - num[k]));
        for (const cd& z : lin.eigenvalues) mis = std::max(mis, std::fabs(z.imag()));
        lin.closed_form_mismatch = mis;
    }
    return lin;
}

FixedPointRecord fixed_point(const ProblemParams& p, FixedPointLabel l) {
    FixedPointRecord rec;
    rec.label = l;
    rec.coords = fixed_point_coords(p, l);
    rec.exists_for_params = std::all_of(rec.coords.begin(), rec.coords.end(), [](double c) { return std::isfinite(c); });
    if (const auto q = to_exact(p); q) rec.exact_coords = fixed_point_exact_coords(*q, l);
    if (!rec.exists_for_params) {
        rec.note = "undefined when mu*delta = 1";
        return rec;
    }
    rec.linear = linearization(p, l);
    const double tol = 1e-12;
    rec.in_region_R = in_region(rec.coords, tol);
    for (const cd& z : rec.linear.eigenvalues)
        if (std::abs(z) < 1e-9) rec.limit_case = true;

    switch (l) {
        case L::I0:
        case L::J0:
        case L::K0:
        case L::L0:
            rec.admissible = false;
            rec.note = "non admissible";
            break;
        case L::C0:
        case L::D0:
            rec.admissible = false;
            rec.note = "non admissible as t -> -infinity (checked empirically only)";
            break;
        case L::O:
            rec.admissible = p.N == 2;
            rec.note = p.N == 2 ? "limit of the global solution when N = 2" : "non admissible";
            break;
        case L::M0:
            rec.admissible = power_solution_exists(p) && p.D() > 0;
            rec.in_region_R = rec.in_region_R && rec.admissible;
            rec.note = rec.admissible ? "particular power solution" : "condition on gamma_ab, xi_ab fails";
            break;
        case L::N0:
        case L::R0:
        case L::S0:
            rec.admissible = true;
            rec.note = "regular solutions";
            break;
        default:
            rec.admissible = true;
            rec.note = "large solutions near 0";
            break;
    }
    return rec;
}

std::vector<FixedPointRecord> fixed_point_catalog(const ProblemParams& p) {
    std::vector<FixedPointRecord> out;
    out.reserve(kAllFixedPoints.size());
    for (L l : kAllFixedPoints) out.push_back(fixed_point(p, l));
    return out;
}

// ---- M0 ---------------------------------------------------------------------------------------

M0Spectrum m0_spectrum(const ProblemParams& p, bool strict) {
    require_superlinear(p);
    if (!power_solution_exists(p))
        throw DomainError("min(gamma_ab, xi_ab) > N - 2 or N in {1, 2}", "M0 is not interior to the region");
    M0Spectrum s;
    s.M0 = fixed_point_coords(p, L::M0);
    const auto [X0, Y0, Z0, W0] = s.M0;
    s.E = Z0 - X0 + W0 - Y0;
    s.F = (Z0 - X0) * (W0 - Y0) - X0 * Z0 - Y0 * W0;
    s.G = -Y0 * W0 * (Z0 - X0) - X0 * Z0 * (W0 - Y0);
    s.H = p.D() * X0 * Y0 * Z0 * W0;
    std::vector<cd> r = companion_roots({-s.H, s.G, s.F, s.E});

    const double coef = 1 + std::fabs(s.E) + std::fabs(s.F) + std::fabs(s.G) + std::fabs(s.H);
    for (cd& z : r) {
        if (is_real(z)) z = cd(z.real(), 0);
        const cd f = (z - X0) * (z + Z0) * (z - Y0) * (z + W0) - p.delta * p.mu * X0 * Y0 * Z0 * W0;
        s.max_residual = std::max(s.max_residual, std::abs(f) / (coef * std::pow(1 + std::abs(z), 4)));
    }

    std::vector<cd> real, other;
    for (const cd& z : r) (z.imag() == 0 ? real : other).push_back(z);
    std::sort(real.begin(), real.end(), [](cd x, cd y) { return x.real() < y.real(); });
    const int n_neg = static_cast<int>(std::count_if(real.begin(), real.end(), [](cd z) { return z.real() < 0; }));
    s.unique_negative_real = n_neg == 1;
    if (!real.empty()) {
        s.lambda3 = real.front().real();
        s.lambda4 = real.back().real();
    }
    if (real.size() >= 2) {
        for (std::size_t i = 1; i + 1 < real.size(); ++i) other.push_back(real[i]);
    }
    std::sort(other.begin(), other.end(), [](cd x, cd y) { return x.imag() < y.imag(); });
    s.lambda4_dominant = real.size() >= 2 &&
                         s.lambda4 > std::max({X0, Y0, std::fabs(Z0), std::fabs(W0)});
    s.pair_positive_real = other.size() == 2 && other[0].real() > 0 && other[1].real() > 0;
    s.pair_complex = other.size() == 2 && other[0].imag() != 0;
    if (other.size() == 2) {
        s.roots[0] = other[0];
        s.roots[1] = other[1];
    }
    s.roots[2] = s.lambda3;
    s.roots[3] = s.lambda4;

    if (s.unique_negative_real) {
        const Eigen::Matrix4d J = to_eigen(origin_jacobian(p, s.M0));
        Eigen::Vector4cd x0;
        x0 << -1, -1, 1, 1;
        const Eigen::Vector4cd v = inverse_iteration(J, s.lambda3, x0);
        Vec4 e;
        for (int i = 0; i < 4; ++i) e[i] = v[i].real();
        if (e[0] > 0)
            for (double& c : e) c = -c;
        const double n = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2] + e[3] * e[3]);
        for (double& c : e) c /= n;
        s.eigenvector3 = e;
        s.sign_pattern = e[0] < 0 && e[1] < 0 && e[2] > 0 && e[3] > 0;
    }

    if (strict && !s.structure_holds()) {
        std::ostringstream os;
        os << "M0 spectrum structure fails for " << describe(p) << ":";
        if (!s.unique_negative_real) os << " negative real roots = " << n_neg << ";";
        if (!s.lambda4_dominant) os << " lambda4 not dominant;";
        if (!s.pair_positive_real) os << " remaining pair without positive real part;";
        if (!s.sign_pattern) os << " eigenvector sign pattern differs from (-,-,+,+);";
        throw StructureViolation(os.str());
    }
    return s;
}

CVec4 m0_spectrum_line(double delta, double mu) {
    const Exponents e = derive_exponents(ProblemParams{1, 0, 0, delta, mu});
    const double B = 1 + e.gamma + e.xi, C = 2 * (1 + e.gamma) * (1 + e.xi);
    const cd disc = std::sqrt(cd(B * B - 4 * C));
    return {(B - disc) / 2.0, (B + disc) / 2.0, -1.0, 2 + e.gamma + e.xi};
}

CVec4 m0_spectrum_symmetric(const ProblemParams& p) {
    if (p.delta != p.mu) throw DomainError("delta = mu", "factorisation needs delta = mu");
    const Vec4 M = fixed_point_coords(p, L::M0);
    const double S = M[0] + std::fabs(M[2]), P = M[0] * std::fabs(M[2]);
    // l^2 - S l - (delta - 1) P and l^2 - S l + (1 + delta) P
    const cd d1 = std::sqrt(cd(S * S + 4 * (p.delta - 1) * P));
    const cd d2 = std::sqrt(cd(S * S - 4 * (1 + p.delta) * P));
    return {(S - d2) / 2.0, (S + d2) / 2.0, (S - d1) / 2.0, (S + d1) / 2.0};
}

// ---- limits -------------------------------------------------------------------------------------

LimitClassification classify_limit(const std::vector<double>& t, const std::vector<Vec4>& P,
                                   const std::vector<FixedPointRecord>& catalog, double tol, bool backward) {
    LimitClassification out;
    if (P.empty() || catalog.empty()) return out;
    const std::size_t n = P.size();
    auto at = [&](std::size_t k) -> const Vec4& { return backward ? P[k] : P[n - 1 - k]; };
    auto time = [&](std::size_t k) { return backward ? t[k] : t[n - 1 - k]; };
    auto dist = [](const Vec4& a, const Vec4& b) {
        double s = 0;
        for (int i = 0; i < 4; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    };

    const Vec4& end = at(0);
    double norm = 0;
    for (double c : end) norm = std::max(norm, std::fabs(c));
    if (!std::isfinite(norm) || norm > 1e6) {
        out.status = "unbounded";
        out.distance = INFINITY;
        return out;
    }
    const FixedPointRecord* best = nullptr;
    double bd = INFINITY;
    for (const auto& rec : catalog) {
        if (!rec.exists_for_params) continue;
        const double d = dist(end, rec.coords);
        if (d < bd) {
            bd = d;
            best = &rec;
        }
    }
    out.distance = bd;
    if (!best) return out;
    out.admissible = best->admissible;

    // distance over the last fifth of the samples, ordered towards the end examined
    const std::size_t m = std::max<std::size_t>(2, n / 5);
    bool decreasing = true;
    double prev = dist(at(m - 1), best->coords);
    for (std::size_t k = m - 1; k-- > 0;) {
        const double d = dist(at(k), best->coords);
        if (d > prev * (1 + 1e-6) + 1e-14) decreasing = false;
        prev = d;
    }
    const double d_far = dist(at(m - 1), best->coords);
    const double dt = std::fabs(time(m - 1) - time(0));
    if (bd > 0 && d_far > 0 && dt > 0) out.rate = std::log(d_far / bd) / dt;
    if (bd < tol && decreasing) {
        out.label = best->label;
        out.status = "converged";
    }
    return out;
}

// ---- launches -----------------------------------------------------------------------------------

int eigen_index_near(const Linearization& lin, double value) {
    int best = 0;
    for (int k = 1; k < 4; ++k)
        if (std::abs(lin.eigenvalues[k] - value) < std::abs(lin.eigenvalues[best] - value)) best = k;
    return best;
}

LaunchResult launch(const ProblemParams& p, FixedPointLabel l, int eigen_index, const LaunchOptions& opt) {
    if (eigen_index < 0 || eigen_index > 3) throw DomainError("eigen index in 0..3", std::to_string(eigen_index));
    const Linearization lin = linearization(p, l);
    const Vec4 c = fixed_point_coords(p, l);
    LaunchResult res;
    res.label = l;
    res.eigen_index = eigen_index;
    res.eigenvalue = lin.eigenvalues[eigen_index].real();
    if (std::fabs(res.eigenvalue) < 1e-9)
        throw DomainError("eigenvalue != 0", "limit case at " + to_string(l) + ", no launch along a zero eigenvalue");

    Vec4 v;
    double vn = 0;
    for (int i = 0; i < 4; ++i) {
        v[i] = lin.eigenvectors[eigen_index][i].real();
        vn += v[i] * v[i];
    }
    vn = std::sqrt(vn);
    for (double& x : v) x *= opt.sign / vn;
    res.direction = v;

    double scale = 0;
    for (double x : c) scale = std::max(scale, std::fabs(x));
    double eps = opt.eps > 0 ? opt.eps : 1e-6 * std::max(1.0, scale);
    const double lam = res.eigenvalue;
    const double dir_main = lam > 0 ? 1 : -1;  // away from the fixed point
    const double T_check = std::log(10.0) / std::fabs(lam);

    auto start_at = [&](double e) {
        Vec4 s;
        for (int i = 0; i < 4; ++i) s[i] = c[i] + e * v[i];
        return s;
    };
    auto distance = [&](const Vec4& P) {
        double s = 0;
        for (int i = 0; i < 4; ++i) s += (P[i] - c[i]) * (P[i] - c[i]);
        return std::sqrt(s);
    };

    PhaseIntegrationOptions check_opt = opt.integration;
    check_opt.stop_on_region_exit = false;
    PhaseLeg approach;
    const bool auto_eps = opt.eps <= 0;
    for (int attempt = 0; attempt < 30; ++attempt) {
        const Vec4 s = start_at(eps);
        approach = integrate_origin_field(p, s, opt.t0, opt.t0 - dir_main * T_check, check_opt);
        const double d0 = distance(s), d1 = distance(approach.P.back());
        const double T = std::fabs(approach.t.back() - opt.t0);
        res.measured_rate = T > 0 && d1 > 0 ? dir_main * std::log(d0 / d1) / T : 0;
        res.rate_ok = std::fabs(res.measured_rate / lam - 1) <= opt.rate_tol;
        if (res.rate_ok || !auto_eps) break;
        eps /= 2;
    }
    res.eps = eps;

    PhaseLeg main = integrate_origin_field(p, start_at(eps), opt.t0, opt.t0 + dir_main * opt.t_span, opt.integration);
    res.stop = main.stop;
    res.trajectory = dir_main > 0 ? join_legs(p, std::move(approach), std::move(main))
                                  : join_legs(p, std::move(main), std::move(approach));
    return res;
}

}  // namespace largesol
