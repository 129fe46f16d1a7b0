#pragma once

#include "largesol/params.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace largesol::cli {

/// Everything a subcommand may read. Flags override values from --config.
struct RunConfig {
    ProblemParams problem;
    double u0 = 1, v0 = 1;
    std::optional<double> r_end;  // integrate: stop here instead of at blow-up
    int n = 33;
    double tol = 1e-12;           // relative integration tolerance
    std::uint64_t seed = 20240611;
    std::string out;              // main output file; stdout when empty
    std::string csv;              // secondary CSV output (phase or solution samples)
    std::string summary;          // secondary JSON output
    std::string suite = "paper";
    bool refine = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitIntegration = 3;
inline constexpr int kExitClaim = 4;

int cmd_constants(const RunConfig& c);
int cmd_integrate(const RunConfig& c);
int cmd_blowup(const RunConfig& c);
int cmd_curve(const RunConfig& c);
int cmd_fixed_points(const RunConfig& c);
int cmd_connect(const RunConfig& c);
int cmd_verify(const RunConfig& c);

}  // namespace largesol::cli
