#pragma once

// The curve S of initial data whose regular solution blows up exactly at R = 1 (a = b = 0).

#include "largesol/radial_ode.hpp"

#include <vector>

namespace largesol {

struct CurvePoint {
    double theta = 0;         // angle of the ray (cos theta, sin theta)
    double rho_at_angle = 0;  // blow-up radius of the data (cos theta, sin theta)
    double u0 = 0, v0 = 0;    // (rho^gamma cos theta, rho^xi sin theta)
    double rho_check = 0;     // blow-up radius recomputed at (u0, v0); 1 on S
};

/// Blow-up radius of the regular solution with data (u0, v0), a = b = 0.
double rho(double N, double delta, double mu, double u0, double v0, const IntegratorConfig& cfg = {});

/// Scales (u0, v0) by lambda = rho(u0, v0) onto S. `check` recomputes the radius there.
CurvePoint normalize_to_S(double N, double delta, double mu, double u0, double v0, const IntegratorConfig& cfg = {},
                          bool check = true);

struct CurveOptions {
    unsigned threads = 0;      // 0: hardware concurrency
    bool refine = false;       // insert midpoints where rho jumps by more than refine_jump (relative)
    double refine_jump = 0.05;
};

struct CurveTrace {
    std::vector<CurvePoint> points;  // theta ascending, endpoints included
    double u0_bar = 0, v0_bar = 0;   // S meets the axes at (u0_bar, 0) and (0, v0_bar)
    double max_rho_residual = 0;     // max |rho_check - 1|
    double max_mirror_error = 0;     // delta = mu only: max distance between (u0, v0)(theta) and swapped (pi/2 - theta)
    double max_outside = 0;          // largest excursion outside [0, u0_bar] x [0, v0_bar]
    bool diagonal_decreasing = true; // rho(s, s) observed decreasing in s (diagnostic)
};

/// Traces S on a uniform theta grid of n >= 2 points over [0, pi/2]. Requires min(delta, mu) >= 1.
CurveTrace trace_S(double N, double delta, double mu, int n, const IntegratorConfig& cfg = {},
                   const CurveOptions& opt = {});

}  // namespace largesol
