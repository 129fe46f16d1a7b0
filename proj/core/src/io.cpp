#include "largesol/io.hpp"

#include "largesol/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace largesol::io {

namespace {

json exact_or_null(const std::optional<Rational>& q) {
    return q ? json(to_string(*q)) : json(nullptr);
}

json num(double x) {
    return std::isfinite(x) ? json(x) : json(fmt(x));
}

json vec_json(const Vec4& v) {
    return json::array({num(v[0]), num(v[1]), num(v[2]), num(v[3])});
}

json complex_json(const std::complex<double>& z) {
    return json::array({num(z.real()), num(z.imag())});
}

void csv_row(std::ostream& os, std::initializer_list<double> xs) {
    bool first = true;
    for (double x : xs) {
        if (!first) os << ',';
        os << fmt(x);
        first = false;
    }
    os << '\n';
}

}  // namespace

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json to_json(const ProblemParams& p) {
    return {{"N", p.N}, {"a", p.a}, {"b", p.b}, {"delta", p.delta}, {"mu", p.mu}};
}

ProblemParams params_from_json(const json& j, ProblemParams base) {
    if (!j.is_object()) throw DomainError("parameters form a JSON object", j.dump());
    auto read = [&](const char* key, double& dst) {
        if (!j.contains(key)) return;
        if (!j[key].is_number()) throw DomainError(std::string(key) + " is a number", j[key].dump());
        dst = j[key].get<double>();
    };
    read("N", base.N);
    read("a", base.a);
    read("b", base.b);
    read("delta", base.delta);
    read("mu", base.mu);
    return base;
}

json constants_json(const ProblemParams& p) {
    require_blowup(p);
    const Exponents e = derive_exponents(p);
    json j = to_json(p);
    j["D"] = e.D;
    j["gamma"] = e.gamma;
    j["xi"] = e.xi;
    j["gamma_ab"] = e.gamma_ab;
    j["xi_ab"] = e.xi_ab;
    if (e.exact) {
        j["D_exact"] = to_string(e.exact->D);
        j["gamma_exact"] = to_string(e.exact->gamma);
        j["xi_exact"] = to_string(e.exact->xi);
        j["gamma_ab_exact"] = to_string(e.exact->gamma_ab);
        j["xi_ab_exact"] = to_string(e.exact->xi_ab);
    }
    const BoundaryConstants bc = boundary_constants(p);
    j["A1"] = bc.A1;
    j["B1"] = bc.B1;
    j["A1_pow_D"] = bc.A1_pow_D;
    j["B1_pow_D"] = bc.B1_pow_D;
    j["A1_pow_D_exact"] = exact_or_null(bc.A1_pow_D_exact);
    j["B1_pow_D_exact"] = exact_or_null(bc.B1_pow_D_exact);
    j["A1_exact"] = exact_or_null(bc.A1_exact);
    j["B1_exact"] = exact_or_null(bc.B1_exact);

    const bool power = power_solution_exists(p);
    j["power_solution_exists"] = power;
    if (power) {
        const SingularConstants sc = singular_constants(p);
        j["A_N"] = sc.A_N;
        j["B_N"] = sc.B_N;
        j["A_N_pow_D"] = sc.A_N_pow_D;
        j["B_N_pow_D"] = sc.B_N_pow_D;
        j["A_N_pow_D_exact"] = exact_or_null(sc.A_N_pow_D_exact);
        j["B_N_pow_D_exact"] = exact_or_null(sc.B_N_pow_D_exact);
    }
    const ProblemParams k = kelvin_params(p);
    j["kelvin_a"] = k.a;
    j["kelvin_b"] = k.b;
    if (p.delta == 1 && p.a == 0 && p.mu > 1) {
        const BiharmonicConstant bh = biharmonic_constant(p.mu, p.b);
        j["biharmonic_exponent"] = bh.exponent;
        j["biharmonic_A"] = bh.A;
        j["biharmonic_A_pow_mu_minus_1"] = bh.A_pow_mu_minus_1;
        j["biharmonic_A_pow_mu_minus_1_exact"] = exact_or_null(bh.A_pow_mu_minus_1_exact);
        j["biharmonic_A_pow_mu_minus_1_printed_variant"] = bh.A_pow_mu_minus_1_misprint;
    }
    return j;
}

json to_json(const BlowupEstimate& e) {
    json trail = json::array();
    for (const auto& t : e.trail)
        trail.push_back({{"threshold", t.threshold}, {"r", t.r}, {"R_leading", t.R_leading},
                         {"R_u", t.R_u}, {"R_v", t.R_v}});
    return {{"R_hat", num(e.R_hat)}, {"err", num(e.err)}, {"trail", trail}};
}

json to_json(const FixedPointRecord& r) {
    json j;
    j["label"] = to_string(r.label);
    j["coords"] = vec_json(r.coords);
    if (r.exact_coords) {
        json ex = json::array();
        for (const auto& q : *r.exact_coords) ex.push_back(to_string(q));
        j["exact_coords"] = ex;
    } else {
        j["exact_coords"] = nullptr;
    }
    json ev = json::array();
    for (const auto& z : r.linear.eigenvalues) ev.push_back(complex_json(z));
    j["eigenvalues"] = ev;
    json vecs = json::array();
    for (const auto& v : r.linear.eigenvectors) {
        json col = json::array();
        for (const auto& z : v) col.push_back(complex_json(z));
        vecs.push_back(col);
    }
    j["eigenvectors"] = vecs;
    if (r.linear.closed_form) {
        const auto& c = *r.linear.closed_form;
        j["closed_form_eigenvalues"] = json::array({num(c[0]), num(c[1]), num(c[2]), num(c[3])});
        j["closed_form_mismatch"] = num(r.linear.closed_form_mismatch);
    }
    j["in_region_R"] = r.in_region_R;
    j["admissible"] = r.admissible;
    j["exists_for_params"] = r.exists_for_params;
    j["limit_case"] = r.limit_case;
    j["note"] = r.note;
    return j;
}

json catalog_json(const std::vector<FixedPointRecord>& catalog) {
    json a = json::array();
    for (const auto& r : catalog) a.push_back(to_json(r));
    return a;
}

json to_json(const M0Spectrum& s) {
    json roots = json::array();
    for (const auto& z : s.roots) roots.push_back(complex_json(z));
    return {{"M0", vec_json(s.M0)},
            {"E", s.E}, {"F", s.F}, {"G", s.G}, {"H", s.H},
            {"roots", roots},
            {"lambda3", s.lambda3},
            {"lambda4", s.lambda4},
            {"eigenvector3", vec_json(s.eigenvector3)},
            {"unique_negative_real", s.unique_negative_real},
            {"lambda4_dominant", s.lambda4_dominant},
            {"pair_positive_real", s.pair_positive_real},
            {"pair_complex", s.pair_complex},
            {"sign_pattern", s.sign_pattern},
            {"max_residual", num(s.max_residual)}};
}

json to_json(const Claim& c) {
    return {{"id", c.id}, {"description", c.description}, {"value", num(c.value)},
            {"threshold", num(c.threshold)}, {"pass", c.pass}};
}

namespace {
json claims_json(const std::vector<Claim>& claims) {
    json a = json::array();
    for (const auto& c : claims) a.push_back(to_json(c));
    return a;
}
}  // namespace

json to_json(const ConnectingOrbitReport& r) {
    json j;
    j["params"] = to_json(r.params);
    j["swapped"] = r.swapped;
    j["lambda3"] = r.lambda3;
    j["eigenvector"] = vec_json(r.eigenvector);
    j["alpha_limit"] = r.alpha_limit.label ? json(to_string(*r.alpha_limit.label)) : json(nullptr);
    j["alpha_limit_status"] = r.alpha_limit.status;
    j["alpha_limit_distance"] = num(r.alpha_limit.distance);
    j["expected_alpha_limit"] = r.expected_alpha_limit ? json(to_string(*r.expected_alpha_limit)) : json(nullptr);
    j["origin"] = to_json(r.origin);
    j["forward_u"] = num(r.forward_u);
    j["forward_v"] = num(r.forward_v);
    j["wrong_steps"] = r.wrong_steps;
    j["above_N_minus_2"] = r.above_N_minus_2;
    j["samples"] = r.trajectory.t.size();
    j["t_min"] = r.trajectory.t.empty() ? 0.0 : r.trajectory.t_min();
    j["t_max"] = r.trajectory.t.empty() ? 0.0 : r.trajectory.t_max();
    j["t_shift"] = r.t_shift;
    j["claims"] = claims_json(r.claims);
    j["pass"] = r.pass();
    return j;
}

json to_json(const RegularLaunchReport& r) {
    return {{"label", to_string(r.label)},
            {"eigenvalue", r.launch.eigenvalue},
            {"eps", r.launch.eps},
            {"measured_rate", num(r.launch.measured_rate)},
            {"data", num(r.data)},
            {"limit_ratio", num(r.limit_ratio)},
            {"cross_validation", num(r.cross_validation)},
            {"r_lo", r.r_lo},
            {"r_hi", r.r_hi},
            {"claims", claims_json(r.claims)},
            {"pass", all_pass(r.claims)}};
}

json to_json(const FitReport& f) {
    return {{"claim", f.claim},
            {"fitted_exponent", num(f.fitted_exponent)},
            {"fitted_constant", num(f.fitted_constant)},
            {"predicted_exponent", num(f.predicted_exponent)},
            {"predicted_constant", num(f.predicted_constant)},
            {"exponent_error", num(f.exponent_error)},
            {"constant_error", num(f.constant_error)},
            {"half_exponent_error", num(f.half_exponent_error)},
            {"half_constant_error", num(f.half_constant_error)},
            {"window", json::array({f.window_lo, f.window_hi})},
            {"samples", f.samples},
            {"exponent_tol", f.exponent_tol},
            {"constant_tol", f.constant_tol},
            {"consistent", f.consistent},
            {"pass", f.pass}};
}

json to_json(const BoundaryExpansionFit& f) {
    return {{"R", num(f.R)},
            {"u", to_json(f.u)},
            {"v", to_json(f.v)},
            {"correction_inner", num(f.correction_inner)},
            {"correction_outer", num(f.correction_outer)},
            {"correction_bounded", f.correction_bounded},
            {"pass", f.pass()}};
}

json to_json(const OriginFit& f) {
    json cands = json::array();
    for (const auto& c : f.candidates)
        cands.push_back({{"id", c.id}, {"eu", c.eu}, {"ev", c.ev}, {"log_u", c.log_u}, {"log_v", c.log_v},
                         {"variation_u", num(c.variation_u)}, {"variation_v", num(c.variation_v)},
                         {"limit_u", num(c.limit_u)}, {"limit_v", num(c.limit_v)}, {"pass", c.pass}});
    return {{"case", f.case_id},
            {"alpha", num(f.alpha)},
            {"beta", num(f.beta)},
            {"relation_error", f.relation_error ? num(*f.relation_error) : json(nullptr)},
            {"r_window", json::array({f.r_lo, f.r_hi})},
            {"candidates", cands},
            {"pass", f.pass}};
}

json to_json(const KellerOssermanReport& k) {
    return {{"max_u", num(k.max_u)}, {"max_v", num(k.max_v)},
            {"r_at_max_u", k.r_at_max_u}, {"r_at_max_v", k.r_at_max_v},
            {"inner_u", num(k.inner_u)}, {"inner_v", num(k.inner_v)},
            {"growing", k.growing}};
}

json curve_summary_json(const CurveTrace& c) {
    return {{"points", c.points.size()},
            {"endpoints", json::array({json::array({c.u0_bar, 0.0}), json::array({0.0, c.v0_bar})})},
            {"max_rho_residual", num(c.max_rho_residual)},
            {"max_mirror_error", num(c.max_mirror_error)},
            {"max_outside", num(c.max_outside)},
            {"diagonal_decreasing", c.diagonal_decreasing}};
}

void write_trajectory_csv(std::ostream& os, const RadialTrajectory& traj) {
    os << "r,u,up,v,vp,err\n";
    for (const auto& s : traj.samples)
        csv_row(os, {s.state.r, s.state.u, s.state.up, s.state.v, s.state.vp, s.err});
}

void write_phase_csv(std::ostream& os, const PhaseTrajectory& traj) {
    const ProblemParams& p = traj.params;
    const std::size_t n = traj.t.size();
    std::vector<double> tau(n, 0.0);
    for (std::size_t i = n - 1; i-- > 0;)
        tau[i] = tau[i + 1] - 0.5 * (traj.P[i][2] + traj.P[i + 1][2]) * (traj.t[i + 1] - traj.t[i]);
    os << "t,X,Y,Z,W,x,y,tau,varpi\n";
    for (std::size_t i = 0; i < n; ++i) {
        const Vec4& P = traj.P[i];
        csv_row(os, {traj.t[i], P[0], P[1], P[2], P[3], -P[0] / P[2], -P[1] / P[2], tau[i], varpi(p, P)});
    }
}

void write_phase_csv(std::ostream& os, const BoundaryTrajectory& traj) {
    const ReducedPath red = reduce_to_2d(traj);
    os << "t,X,Y,Z,W,x,y,tau,varpi\n";
    // reduce_to_2d keeps one point per sample, in reverse order
    const std::size_t n = traj.samples.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = traj.samples[i];
        const ReducedPoint& q = red.points[n - 1 - i];
        csv_row(os, {s.t, s.P[0], s.P[1], s.P[2], s.P[3], q.x, q.y, q.tau, varpi(traj.params, s.P)});
    }
}

void write_curve_csv(std::ostream& os, const CurveTrace& c) {
    os << "theta,u0,v0,rho_check\n";
    for (const auto& q : c.points) csv_row(os, {q.theta, q.u0, q.v0, q.rho_check});
}

void write_columns(std::ostream& os, const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("columns of equal length", "two-column output");
    for (std::size_t i = 0; i < x.size(); ++i) os << fmt(x[i]) << ' ' << fmt(y[i]) << '\n';
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("output path is writable", path);
    f << text;
    if (!f) throw DomainError("output path is writable", path);
}

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("config file exists", path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw DomainError("config file is valid JSON", path + ": " + e.what());
    }
}

}  // namespace largesol::io
