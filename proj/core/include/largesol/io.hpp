#pragma once

// JSON and CSV serialization. Numbers are written with 17 significant digits so that
// repeated runs produce byte-identical files.

#include "largesol/asymptotics.hpp"
#include "largesol/blowcurve.hpp"
#include "largesol/manifolds.hpp"
#include "largesol/orbits.hpp"
#include "largesol/params.hpp"
#include "largesol/radial_ode.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

namespace largesol::io {

using json = nlohmann::ordered_json;

json to_json(const ProblemParams& p);
/// Reads {"N", "a", "b", "delta", "mu"}; missing keys keep `base`, other keys are ignored.
ProblemParams params_from_json(const json& j, ProblemParams base = {});

/// Flat record of every exponent and constant that exists for p.
json constants_json(const ProblemParams& p);

json to_json(const BlowupEstimate& e);
json to_json(const FixedPointRecord& r);
json catalog_json(const std::vector<FixedPointRecord>& catalog);
json to_json(const M0Spectrum& s);
json to_json(const Claim& c);
json to_json(const ConnectingOrbitReport& r);
json to_json(const RegularLaunchReport& r);
json to_json(const FitReport& f);
json to_json(const BoundaryExpansionFit& f);
json to_json(const OriginFit& f);
json to_json(const KellerOssermanReport& k);
json curve_summary_json(const CurveTrace& c);

/// %.17g, with "nan", "inf", "-inf" for non-finite values.
std::string fmt(double x);

/// r,u,up,v,vp,err
void write_trajectory_csv(std::ostream& os, const RadialTrajectory& traj);
/// t,X,Y,Z,W,x,y,tau,varpi for an origin-chart trajectory; x = -X/Z, y = -Y/Z and
/// tau = -int_t^tmax Z dt by the trapezoidal rule.
void write_phase_csv(std::ostream& os, const PhaseTrajectory& traj);
/// Same columns for a boundary-chart trajectory, tau from the planar reduction.
void write_phase_csv(std::ostream& os, const BoundaryTrajectory& traj);
/// theta,u0,v0,rho_check
void write_curve_csv(std::ostream& os, const CurveTrace& c);
/// Two whitespace-separated columns.
void write_columns(std::ostream& os, const std::vector<double>& x, const std::vector<double>& y);

/// Writes text to a file, throwing DomainError when it cannot be opened.
void write_file(const std::string& path, const std::string& text);
/// Parses a JSON file, throwing DomainError on a missing file or bad syntax.
json read_json_file(const std::string& path);

}  // namespace largesol::io
