// largesol: command-line front end.
//
//   largesol constants    --N 8 --delta 1 --mu 3
//   largesol integrate    --u0 1 --v0 1 --out traj.csv [--csv phase.csv] [--summary blowup.json]
//   largesol blowup       --u0 1 --v0 1
//   largesol curve        --n 33 --out curve.csv [--summary s.json] [--csv plot.dat]
//   largesol fixed-points --N 3 --delta 2 --mu 2
//   largesol connect      --N 3 --delta 2 --mu 2 [--csv solution.csv]
//   largesol verify       --suite paper [--out table.md]
//
// Exit codes: 0 success, 2 invalid input, 3 integration failure, 4 a checked claim failed.

#include "commands.hpp"

#include "largesol/errors.hpp"
#include "largesol/io.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>

using namespace largesol;
using namespace largesol::cli;

namespace {

bool given(const CLI::App& app, const char* flag) {
    const CLI::Option* o = app.get_option_no_throw(flag);
    return o != nullptr && o->count() > 0;
}

// Fills every option the user did not give on the command line from the JSON config.
void apply_config(const io::json& j, CLI::App& app, RunConfig& c) {
    auto given = [&](const char* flag) { return ::given(app, flag); };
    ProblemParams from_file = io::params_from_json(j, c.problem);
    if (!given("--N")) c.problem.N = from_file.N;
    if (!given("--a")) c.problem.a = from_file.a;
    if (!given("--b")) c.problem.b = from_file.b;
    if (!given("--delta")) c.problem.delta = from_file.delta;
    if (!given("--mu")) c.problem.mu = from_file.mu;
    auto num = [&](const char* key, const char* flag, auto& dst) {
        if (given(flag) || !j.contains(key)) return;
        if (!j[key].is_number()) throw DomainError(std::string(key) + " is a number", j[key].dump());
        dst = j[key].get<std::decay_t<decltype(dst)>>();
    };
    auto str = [&](const char* key, const char* flag, std::string& dst) {
        if (given(flag) || !j.contains(key)) return;
        if (!j[key].is_string()) throw DomainError(std::string(key) + " is a string", j[key].dump());
        dst = j[key].get<std::string>();
    };
    num("u0", "--u0", c.u0);
    num("v0", "--v0", c.v0);
    num("n", "--n", c.n);
    num("tol", "--tol", c.tol);
    num("seed", "--seed", c.seed);
    str("out", "--out", c.out);
    str("csv", "--csv", c.csv);
    str("summary", "--summary", c.summary);
    if (!given("--r-end") && j.contains("r_end")) c.r_end = j["r_end"].get<double>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Large solutions of radial elliptic systems: constants, blow-up, phase-space analysis"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path;
    double r_end = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--N", cfg.problem.N, "dimension")->capture_default_str();
        sub->add_option("--a", cfg.problem.a, "weight exponent of the first equation")->capture_default_str();
        sub->add_option("--b", cfg.problem.b, "weight exponent of the second equation")->capture_default_str();
        sub->add_option("--delta", cfg.problem.delta, "power of v in the first equation")->capture_default_str();
        sub->add_option("--mu", cfg.problem.mu, "power of u in the second equation")->capture_default_str();
        sub->add_option("--config", config_path, "JSON file with any of the options")->check(CLI::ExistingFile);
        sub->add_option("--out", cfg.out, "output file (default: stdout)");
        sub->add_option("--tol", cfg.tol, "relative integration tolerance")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
    };
    auto data = [&](CLI::App* sub) {
        sub->add_option("--u0", cfg.u0, "u(0)")->capture_default_str();
        sub->add_option("--v0", cfg.v0, "v(0)")->capture_default_str();
    };

    std::function<int(const RunConfig&)> action;
    auto bind = [&](CLI::App* sub, int (*fn)(const RunConfig&)) {
        sub->callback([&action, fn] { action = fn; });
    };

    auto* constants = app.add_subcommand("constants", "derived exponents and constants as JSON");
    common(constants);
    bind(constants, cmd_constants);

    auto* integrate = app.add_subcommand("integrate", "regular solution as CSV r,u,up,v,vp,err");
    common(integrate);
    data(integrate);
    integrate->add_option("--r-end", r_end, "stop at this radius instead of at blow-up");
    integrate->add_option("--csv", cfg.csv, "boundary-chart CSV t,X,Y,Z,W,x,y,tau,varpi");
    integrate->add_option("--summary", cfg.summary, "blow-up estimate JSON");
    bind(integrate, cmd_integrate);

    auto* blowup = app.add_subcommand("blowup", "blow-up radius with its extrapolation trail and the boundary fit");
    common(blowup);
    data(blowup);
    bind(blowup, cmd_blowup);

    auto* curve = app.add_subcommand("curve", "initial data blowing up at R = 1, CSV theta,u0,v0,rho_check");
    common(curve);
    curve->add_option("--n", cfg.n, "number of angles")->capture_default_str();
    curve->add_flag("--refine", cfg.refine, "insert midpoints where the radius changes quickly");
    curve->add_option("--summary", cfg.summary, "JSON summary");
    curve->add_option("--csv", cfg.csv, "two-column u0 v0 plot data");
    bind(curve, cmd_curve);

    auto* fixed = app.add_subcommand("fixed-points", "fixed-point catalog of the origin chart as JSON");
    common(fixed);
    fixed->add_option("--summary", cfg.summary, "spectrum at M0 as JSON");
    bind(fixed, cmd_fixed_points);

    auto* connect = app.add_subcommand("connect", "orbit from the origin behaviour to M0, JSON report");
    common(connect);
    connect->add_option("--csv", cfg.csv, "reconstructed solution r,u,v");
    bind(connect, cmd_connect);

    auto* verify = app.add_subcommand("verify", "acceptance suite");
    common(verify);
    verify->add_option("--suite", cfg.suite, "suite name")->capture_default_str();
    bind(verify, cmd_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!config_path.empty()) apply_config(io::read_json_file(config_path), *sub, cfg);
        if (given(*sub, "--r-end")) cfg.r_end = r_end;
        return action(cfg);
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const IntegrationError& e) {
        std::cerr << "integration failed: " << e.what() << '\n';
        return kExitIntegration;
    } catch (const StructureViolation& e) {
        std::cerr << "claim failed: " << e.what() << '\n';
        return kExitClaim;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
