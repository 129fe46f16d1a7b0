#include "largesol/radial_ode.hpp"

#include <cmath>

namespace largesol {

std::vector<RadialJet> kelvin_transform(const std::vector<RadialJet>& jets, double N) {
    std::vector<RadialJet> out;
    out.reserve(jets.size());
    for (auto it = jets.rbegin(); it != jets.rend(); ++it) {
        const RadialJet& j = *it;
        const double rho = 1.0 / j.r;
        const double c0 = std::pow(rho, 2 - N);      // rho^(2-N)
        const double c1 = std::pow(rho, 1 - N);      // rho^(1-N)
        const double m0 = std::pow(rho, -N);         // rho^-N
        const double m1 = m0 / rho;                  // rho^(-N-1)
        const double m2 = m1 / rho;                  // rho^(-N-2)
        RadialJet k;
        k.r = rho;
        k.u = c0 * j.u;
        k.up = (2 - N) * c1 * j.u - m0 * j.up;
        k.upp = (2 - N) * (1 - N) * m0 * j.u + (2 * N - 2) * m1 * j.up + m2 * j.upp;
        k.v = c0 * j.v;
        k.vp = (2 - N) * c1 * j.v - m0 * j.vp;
        k.vpp = (2 - N) * (1 - N) * m0 * j.v + (2 * N - 2) * m1 * j.vp + m2 * j.vpp;
        out.push_back(k);
    }
    return out;
}

std::vector<RadialJet> kelvin_transform(const RadialTrajectory& traj) {
    return kelvin_transform(traj.jets(), traj.params.N);
}

}  // namespace largesol
