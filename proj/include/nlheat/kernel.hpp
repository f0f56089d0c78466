#pragma once

#include "nlheat/model.hpp"

namespace nlheat {

/// Everything the implicit step needs at one interior node.
///
/// With A = ρc_p/τ:
///   φ = A(u − u_prev) − ∂ᵤκ·v²
///   f = φ/κ                      (the second spatial derivative of u)
///   q = ∂f/∂u = (−f·∂ᵤκ + A − ∂²ᵤᵤκ·v²)/κ
///   p = ∂f/∂v = −2∂ᵤκ·v/κ
struct NodeEval {
    double f = 0.0;
    double phi = 0.0;
    double q = 0.0;
    double p = 0.0;
    double kappa = 0.0;
    double dkappa = 0.0;
    double d2kappa = 0.0;
    double v = 0.0;
};

/// ρc_p/τ, computed once per time step.
double capacity_rate(double rho, double cp, double tau);

/// (u_right − u_left)/(2h)
inline double gradient_central(double u_left, double u_right, double h) {
    return (u_right - u_left) / (2.0 * h);
}

/// Throws ErrorKind::ConductivityDomain if κ(u) ≤ 0. Extreme |v| is not
/// guarded; overflow shows up as non-finite fields.
NodeEval eval_node(double u, double u_prev, double v, double capacity_rate,
                   const ConductivityLaw& law);

}  // namespace nlheat
