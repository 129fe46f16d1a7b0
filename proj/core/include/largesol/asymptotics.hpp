#pragma once

// Power-law fits of computed profiles against the predicted behaviour at a blow-up
// radius and near the origin.

#include "largesol/params.hpp"
#include "largesol/radial_ode.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace largesol {

/// (u, v) at radius r.
using Profile = std::function<std::array<double, 2>(double r)>;

struct PowerFit {
    double exponent = 0;  // y ~ constant * x^exponent
    double constant = 0;
    double rms = 0;       // weighted rms of the log residuals
};

/// Weighted least squares of ln y against ln x with weights 1/x.
PowerFit weighted_power_fit(const std::vector<double>& x, const std::vector<double>& y);

struct FitReport {
    std::string claim;
    double fitted_exponent = 0, fitted_constant = 0;
    double predicted_exponent = 0, predicted_constant = 0;
    double exponent_error = 0, constant_error = 0;            // relative, on the full window
    double half_exponent_error = 0, half_constant_error = 0;  // on the inner half of the window
    double window_lo = 0, window_hi = 0;
    int samples = 0;
    double exponent_tol = 0, constant_tol = 0;
    bool consistent = false;  // the inner half window is at most twice as far off
    bool pass = false;
};

struct FitOptions {
    int samples = 200;          // at least 50
    double decades = 1;         // window length in decades
    double exponent_tol = 0.01;
    double constant_tol = 0.02;
};

struct BoundaryExpansionFit {
    FitReport u, v;
    double R = 0;
    /// sup |(u d^gamma / A - 1) / d| on the innermost decade and on the next one out. The
    /// innermost decade starts at max(d_min, 1e3 sqrt(eps R)).
    double correction_inner = 0, correction_outer = 0;
    bool correction_bounded = false;
    bool pass() const { return u.pass && v.pass && correction_bounded; }
};

/// Fits u ~ A d^-gamma and v ~ B d^-xi with d = R - r on d in [d_min, d_min 10^decades].
BoundaryExpansionFit fit_boundary_expansion(const Profile& uv, const ProblemParams& p, double R, double d_min,
                                            const FitOptions& opt = {});
/// Same, on the dense output of a blow-up trajectory; requires u > 1e6 at its end.
BoundaryExpansionFit fit_boundary_expansion(const RadialTrajectory& traj, const ProblemParams& p, double R,
                                            const FitOptions& opt = {});

/// One candidate origin behaviour u ~ alpha r^-eu |ln r|^lu, v ~ beta r^-ev |ln r|^lv.
struct OriginCandidate {
    std::string id;
    double eu = 0, ev = 0;
    int log_u = 0, log_v = 0;
    double variation_u = 0, variation_v = 0;  // (max - min)/mean of the normalised quantities
    double limit_u = 0, limit_v = 0;          // normalised values at the innermost radius
    bool pass = false;
};

struct OriginFit {
    std::string case_id;  // "regular", "A0", "P0", "Q0", "G0", "H0", "M0", "A0_log_u", "A0_log_v", "O_log", "none"
    std::vector<OriginCandidate> candidates;
    double alpha = 0, beta = 0;
    std::optional<double> relation_error;  // beta(alpha) (or alpha(beta)) relative error for P0 / Q0
    double r_lo = 0, r_hi = 0;
    bool pass = false;
};

/// Classifies the behaviour on the decade [r_min, 10 r_min]. Throws StructureViolation when
/// two inequivalent candidates fit equally well.
OriginFit fit_origin_behavior(const Profile& uv, const ProblemParams& p, double r_min, double tol = 0.02,
                              int samples = 200);
OriginFit fit_origin_behavior(const RadialTrajectory& traj, const ProblemParams& p, double tol = 0.02);

struct KellerOssermanReport {
    double max_u = 0, max_v = 0;  // of u r^gamma_ab and v r^xi_ab
    double r_at_max_u = 0, r_at_max_v = 0;
    double inner_u = 0, inner_v = 0;  // values at the smallest radius
    bool growing = false;             // still increasing by more than 10% over the innermost decade
};

KellerOssermanReport keller_osserman_check(const Profile& uv, const ProblemParams& p, double r_min, double r_max,
                                           int samples = 400);
KellerOssermanReport keller_osserman_check(const RadialTrajectory& traj, const ProblemParams& p);

/// Dense-output profile of a radial trajectory.
Profile profile_of(const RadialTrajectory& traj);

}  // namespace largesol
