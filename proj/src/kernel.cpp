#include "nlheat/kernel.hpp"

#include "nlheat/error.hpp"

#include <cmath>

namespace nlheat {

double capacity_rate(double rho, double cp, double tau) {
    if (!(tau > 0.0)) throw Error(ErrorKind::InvalidArgument, "time step tau must be positive");
    return rho * cp / tau;
}

NodeEval eval_node(double u, double u_prev, double v, double capacity_rate,
                   const ConductivityLaw& law) {
    const ConductivityEval k = eval_conductivity(law, u);
    NodeEval n;
    n.kappa = k.value;
    n.dkappa = k.d1;
    n.d2kappa = k.d2;
    n.v = v;
    n.phi = capacity_rate * (u - u_prev) - k.d1 * v * v;
    n.f = n.phi / k.value;
    n.q = (-n.f * k.d1 + capacity_rate - k.d2 * v * v) / k.value;
    n.p = -2.0 * k.d1 * v / k.value;
    return n;
}

}  // namespace nlheat
