#pragma once

// Problem parameters of the radial system
//     u'' + (N-1)/r u' = r^a v^delta,   v'' + (N-1)/r v' = r^b u^mu
// and every closed-form exponent and constant derived from them.

#include "largesol/rational.hpp"

#include <optional>
#include <string>

namespace largesol {

struct ProblemParams {
    double N = 3;
    double a = 0;
    double b = 0;
    double delta = 2;
    double mu = 2;

    double D() const { return mu * delta - 1.0; }
    bool operator==(const ProblemParams&) const = default;
};

/// Rational version of the parameters, used for exact identities.
struct ExactParams {
    Rational N, a, b, delta, mu;
};

std::optional<ExactParams> to_exact(const ProblemParams& p);
ProblemParams to_double(const ExactParams& p);

/// D = mu*delta - 1 > 0.
void require_superlinear(const ProblemParams& p);
/// a, b > max(-2, -N).
void require_weights(const ProblemParams& p);
/// D != 0 plus the weight condition; enough for regular solutions.
void require_regular(const ProblemParams& p);
/// D > 0 plus the weight condition; every blow-up operation needs this.
void require_blowup(const ProblemParams& p);

struct ExactExponents {
    Rational D, gamma, xi, gamma_ab, xi_ab;
};

struct Exponents {
    double D = 0, gamma = 0, xi = 0, gamma_ab = 0, xi_ab = 0;
    std::optional<ExactExponents> exact;  // present when all inputs are rational
};

ExactExponents derive_exponents(const ExactParams& p);
Exponents derive_exponents(const ProblemParams& p);

/// Leading coefficients of u ~ A1 d^-gamma, v ~ B1 d^-xi at a boundary blow-up (R = 1).
struct BoundaryConstants {
    double A1 = 0, B1 = 0;
    double A1_pow_D = 0, B1_pow_D = 0;
    std::optional<Rational> A1_pow_D_exact, B1_pow_D_exact;
    std::optional<Rational> A1_exact, B1_exact;  // when the D-th root is rational
};

BoundaryConstants boundary_constants(const ProblemParams& p);

/// Coefficients of the power solution u* = A_N r^-gamma_ab, v* = B_N r^-xi_ab.
struct SingularConstants {
    double A_N = 0, B_N = 0;
    double A_N_pow_D = 0, B_N_pow_D = 0;
    std::optional<Rational> A_N_pow_D_exact, B_N_pow_D_exact;
};

/// True when min(gamma_ab, xi_ab) > N - 2 or N is 1 or 2.
bool power_solution_exists(const ProblemParams& p);
SingularConstants singular_constants(const ProblemParams& p);

/// Boundary constant of the biharmonic problem Delta^2 u = |x|^b |u|^mu.
struct BiharmonicConstant {
    double exponent = 0;           // 4/(mu-1)
    double A = 0;                  // canonical coefficient
    double A_pow_mu_minus_1 = 0;   // 8(mu+3)(mu+1)(3mu+1)/(mu-1)^4
    std::optional<Rational> A_pow_mu_minus_1_exact;
    /// The same expression with (3mu-1) in place of (3mu+1). It disagrees with the
    /// explicit N = 8 solution and is reported for comparison only.
    double A_pow_mu_minus_1_misprint = 0;
    double A_misprint = 0;
};

BiharmonicConstant biharmonic_constant(double mu, double b = 0);

/// C^{mu-1} for the power solution u = C r^{-(4+b)/(mu-1)} of Delta^2 u = r^b u^mu:
/// (4+b)(N+2+b-(N-2)mu)(2mu+2+b)(N+b-(N-4)mu)/(mu-1)^4. Zero or negative means no such solution.
double biharmonic_power_constant_pow(double N, double mu, double b);

/// Weights of the Kelvin image: a' = (N-2)delta - (N+2+a), b' = (N-2)mu - (N+2+b).
ProblemParams kelvin_params(const ProblemParams& p);

/// Factors R^{gamma - gamma_ab}, R^{xi - xi_ab} multiplying (A1, B1) for blow-up at R.
struct RCorrection {
    double A_factor = 1, B_factor = 1;
};
RCorrection general_R_correction(const ProblemParams& p, double R);

std::string describe(const ProblemParams& p);

}  // namespace largesol
