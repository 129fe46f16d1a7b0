#pragma once

// Reference values computed without the ODE integrator.

#include "largesol/radial_ode.hpp"

namespace largesol::oracle {

/// Blow-up radius of u'' = u^p on the line with u(0) = c, u'(0) = 0, from the
/// first integral u'^2 = 2 (u^(p+1) - c^(p+1)) / (p+1), by tanh-sinh quadrature.
double line_blowup_radius(double p, double c);

/// Same radius for p = 3, c = 1 in closed form: Gamma(1/4)^2 / (4 sqrt(pi)).
double line_blowup_radius_p3_closed_form();

/// Explicit large solution of Delta^2 u = u^((N+4)/(N-4)) in the unit ball (N > 4):
///     u = C (1 - r^2)^((4-N)/2),  C^(8/(N-4)) = N (N-4) (N^2-4),
/// returned with v = Delta u and exact derivatives.
RadialJet explicit_biharmonic_jet(double N, double r);
double explicit_biharmonic_C(double N);

/// Power solution (u*, v*) as a jet at r.
RadialJet power_solution_jet(const ProblemParams& p, double r);

}  // namespace largesol::oracle
