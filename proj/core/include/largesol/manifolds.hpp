#pragma once

// Fixed points of the origin-chart system, their linearizations, and trajectories
// launched along eigenvectors.

#include "largesol/phase.hpp"
#include "largesol/rational.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace largesol {

enum class FixedPointLabel { O, M0, N0, R0, S0, A0, G0, H0, P0, Q0, I0, J0, K0, L0, C0, D0 };

inline constexpr std::array<FixedPointLabel, 16> kAllFixedPoints = {
    FixedPointLabel::O,  FixedPointLabel::M0, FixedPointLabel::N0, FixedPointLabel::R0,
    FixedPointLabel::S0, FixedPointLabel::A0, FixedPointLabel::G0, FixedPointLabel::H0,
    FixedPointLabel::P0, FixedPointLabel::Q0, FixedPointLabel::I0, FixedPointLabel::J0,
    FixedPointLabel::K0, FixedPointLabel::L0, FixedPointLabel::C0, FixedPointLabel::D0};

std::string to_string(FixedPointLabel l);
/// Accepts "M0", "m0", "O", ...; throws DomainError otherwise.
FixedPointLabel parse_fixed_point(const std::string& s);

using CVec4 = std::array<std::complex<double>, 4>;

struct Linearization {
    Mat4 jacobian{};
    CVec4 eigenvalues{};                 // sorted: real ones ascending, then complex pairs by real part
    std::array<CVec4, 4> eigenvectors{}; // unit 2-norm, largest component real and positive
    std::optional<std::array<double, 4>> closed_form;  // the displayed list, when one exists
    double closed_form_mismatch = 0;                    // max distance between the two lists
};

struct FixedPointRecord {
    FixedPointLabel label = FixedPointLabel::O;
    Vec4 coords{};
    std::optional<std::array<Rational, 4>> exact_coords;
    Linearization linear;
    bool in_region_R = false;       // XZ <= 0 and YW <= 0
    bool admissible = false;        // off the invariant hyperplanes in the limit, per the catalog remarks
    bool exists_for_params = true;  // coordinates finite
    bool limit_case = false;        // an eigenvalue within 1e-9 of 0
    std::string note;
};

Vec4 fixed_point_coords(const ProblemParams& p, FixedPointLabel l);
std::optional<std::array<Rational, 4>> fixed_point_exact_coords(const ExactParams& p, FixedPointLabel l);
/// Origin field over the rationals.
std::array<Rational, 4> origin_field_exact(const ExactParams& p, const std::array<Rational, 4>& P);

Linearization linearization(const ProblemParams& p, FixedPointLabel l);
/// Linearization at an arbitrary point (no closed form attached).
Linearization linearization_at(const ProblemParams& p, const Vec4& P);

FixedPointRecord fixed_point(const ProblemParams& p, FixedPointLabel l);
std::vector<FixedPointRecord> fixed_point_catalog(const ProblemParams& p);

// ---- spectrum at M0 ---------------------------------------------------------------------------

/// f(l) = (l - X0)(l + Z0)(l - Y0)(l + W0) - delta mu X0 Y0 Z0 W0 = l^4 + E l^3 + F l^2 + G l - H.
struct M0Spectrum {
    Vec4 M0{};
    double E = 0, F = 0, G = 0, H = 0;
    CVec4 roots{};  // order: lambda1, lambda2 (the remaining pair), lambda3 < 0, lambda4 > 0
    double lambda3 = 0, lambda4 = 0;
    Vec4 eigenvector3{};  // real eigenvector of lambda3 with X, Y components negative
    bool unique_negative_real = false;
    bool lambda4_dominant = false;  // lambda4 > max(X0, Y0, |Z0|, |W0|)
    bool pair_positive_real = false;
    bool pair_complex = false;
    bool sign_pattern = false;  // eigenvector3 has signs (-, -, +, +)
    double max_residual = 0;    // max |f(root)| scaled by the coefficient size

    bool structure_holds() const {
        return unique_negative_real && lambda4_dominant && pair_positive_real && sign_pattern;
    }
};

/// Roots of the quartic at M0. Requires the power solution to exist; throws StructureViolation
/// when `strict` and the expected root structure fails.
M0Spectrum m0_spectrum(const ProblemParams& p, bool strict = true);

/// Explicit roots for N = 1, a = b = 0: -1, 2 + gamma + xi and the roots of
/// l^2 - (1 + gamma + xi) l + 2(1 + gamma)(1 + xi).
CVec4 m0_spectrum_line(double delta, double mu);
/// Roots when delta = mu, from the factorisation into two quadratics.
CVec4 m0_spectrum_symmetric(const ProblemParams& p);

// ---- limits -------------------------------------------------------------------------------------

struct LimitClassification {
    std::optional<FixedPointLabel> label;
    std::string status = "undecided";  // "converged", "unbounded" or "undecided"
    double distance = 0;               // to the nearest catalog point at the end examined
    double rate = 0;                   // fitted exponential rate of the distance (per unit t)
    bool admissible = true;
};

/// Nearest catalog point at the end of a trajectory (the t -> -infinity end when
/// `backward`), accepted when the distance is below tol and non-increasing over the
/// last fifth of the samples.
LimitClassification classify_limit(const std::vector<double>& t, const std::vector<Vec4>& P,
                                   const std::vector<FixedPointRecord>& catalog, double tol = 1e-3,
                                   bool backward = true);

// ---- launches -----------------------------------------------------------------------------------

struct LaunchOptions {
    double eps = 0;         // 0: 1e-6 times the coordinate scale, halved until the rate check passes
    double sign = 1;        // multiplies the eigenvector
    double t0 = 0;          // time attached to the launch point
    double t_span = 20;     // integration length, in the direction away from the fixed point
    double rate_tol = 0.05; // relative agreement of the measured and the selected eigenvalue
    PhaseIntegrationOptions integration;
};

struct LaunchResult {
    FixedPointLabel label = FixedPointLabel::O;
    int eigen_index = 0;
    double eigenvalue = 0;
    Vec4 direction{};  // real eigenvector after the sign choice
    double eps = 0;
    double measured_rate = 0;
    bool rate_ok = false;
    PhaseTrajectory trajectory;  // covers the approach leg (towards the fixed point) and the launch leg
    PhaseStop stop = PhaseStop::ReachedEnd;
};

/// Starts at coords + eps * sign * v for the eigenvector v of eigenvalue `eigen_index`
/// (real eigenvalues only; complex ones use the real part of the vector). Unstable
/// directions are integrated forward, stable ones backward; a short leg in the other
/// direction measures the rate of approach to the fixed point.
LaunchResult launch(const ProblemParams& p, FixedPointLabel l, int eigen_index, const LaunchOptions& opt = {});

/// Index of the eigenvalue closest to `value` in a linearization.
int eigen_index_near(const Linearization& lin, double value);

}  // namespace largesol
