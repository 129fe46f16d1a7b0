#include <doctest.h>

#include "largesol/dop853.hpp"

#include <cmath>
#include <vector>

using namespace largesol;

namespace {

// y' = cos(t) y, y(0) = 1, exact exp(sin t)
Vec<1> growth(double t, const Vec<1>& y) { return {std::cos(t) * y[0]}; }

double fixed_step_error(double h) {
    Dop853Options opt;
    opt.rel_tol = 1e6;  // never reject
    opt.abs_tol = 1e6;
    opt.initial_step = h;
    opt.max_step = h;
    auto res = dop853<1>(growth, 0.0, {1.0}, 2.0, opt,
                         [](const DenseStep<1>&, const Vec<1>&, double) { return StepControl::Continue; });
    return std::fabs(res.y[0] - std::exp(std::sin(2.0)));
}

}  // namespace

TEST_CASE("exponential growth to tolerance") {
    Dop853Options opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-15;
    auto res = dop853<1>([](double, const Vec<1>& y) { return Vec<1>{y[0]}; }, 0.0, {1.0}, 1.0, opt,
                         [](const DenseStep<1>&, const Vec<1>&, double) { return StepControl::Continue; });
    CHECK(res.status == Dop853Status::Completed);
    CHECK(res.t == 1.0);
    CHECK(res.y[0] == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("eighth order convergence with fixed steps") {
    const double e1 = fixed_step_error(0.2);
    const double e2 = fixed_step_error(0.1);
    const double order = std::log2(e1 / e2);
    CHECK(order > 7.3);
    CHECK(order < 9.0);
}

TEST_CASE("oscillator over ten periods, forward and backward") {
    auto osc = [](double, const Vec<2>& y) { return Vec<2>{y[1], -y[0]}; };
    Dop853Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-14;
    const double T = 20 * M_PI;
    auto fwd = dop853<2>(osc, 0.0, {1.0, 0.0}, T, opt,
                         [](const DenseStep<2>&, const Vec<2>&, double) { return StepControl::Continue; });
    CHECK(fwd.y[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::fabs(fwd.y[1]) < 1e-9);
    auto bwd = dop853<2>(osc, T, fwd.y, 0.0, opt,
                         [](const DenseStep<2>&, const Vec<2>&, double) { return StepControl::Continue; });
    CHECK(bwd.y[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dense output and its derivative") {
    auto osc = [](double, const Vec<2>& y) { return Vec<2>{y[1], -y[0]}; };
    Dop853Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-14;
    DenseSolution<2> sol;
    dop853<2>(osc, 0.0, {1.0, 0.0}, 10.0, opt, [&](const DenseStep<2>& s, const Vec<2>&, double) {
        sol.push(s);
        return StepControl::Continue;
    });
    REQUIRE(sol.size() > 3);
    double worst = 0, worst_d = 0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = 10.0 * i / 1000;
        const auto y = sol(t);
        const auto dy = sol.derivative(t);
        worst = std::max(worst, std::fabs(y[0] - std::cos(t)));
        worst_d = std::max(worst_d, std::fabs(dy[0] + std::sin(t)));
    }
    CHECK(worst < 1e-10);
    CHECK(worst_d < 1e-8);
}

TEST_CASE("observer can stop the integration") {
    Dop853Options opt;
    int calls = 0;
    auto res = dop853<1>([](double, const Vec<1>& y) { return Vec<1>{y[0]}; }, 0.0, {1.0}, 100.0, opt,
                         [&](const DenseStep<1>&, const Vec<1>& y, double) {
                             ++calls;
                             return y[0] > 10 ? StepControl::Stop : StepControl::Continue;
                         });
    CHECK(res.status == Dop853Status::Stopped);
    CHECK(res.y[0] > 10);
    CHECK(res.t < 100);
}

TEST_CASE("finite-time singularity") {
    // y' = y^2, y(0) = 1 blows up at t = 1.
    Dop853Options opt;
    opt.rel_tol = 1e-12;
    auto rhs = [](double, const Vec<1>& y) { return Vec<1>{y[0] * y[0]}; };
    auto res = dop853<1>(rhs, 0.0, {1.0}, 2.0, opt,
                         [](const DenseStep<1>&, const Vec<1>&, double) { return StepControl::Continue; });
    CHECK(res.status != Dop853Status::Completed);
    CHECK(std::fabs(res.t - 1.0) < 1e-9);

    auto stopped = dop853<1>(rhs, 0.0, {1.0}, 2.0, opt, [](const DenseStep<1>&, const Vec<1>& y, double) {
        return y[0] > 1e8 ? StepControl::Stop : StepControl::Continue;
    });
    // An error of order rel_tol in the blow-up time is amplified by 1/(1-t) here.
    CHECK(stopped.y[0] * (1.0 - stopped.t) == doctest::Approx(1.0).epsilon(1e-3));
}
