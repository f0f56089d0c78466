#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace nlheat {

// ---------------------------------------------------------------------------
// Thermal conductivity laws κ(u)
// ---------------------------------------------------------------------------

struct ConstantConductivity {
    double kappa0 = 0.1;
};

/// κ(u) = κ₀·exp(χu)
struct ExponentialConductivity {
    double kappa0 = 0.1;
    double chi = 0.0;
};

/// κ(u) = c₀ + c₁u + … + c_d u^d
struct PolynomialConductivity {
    std::vector<double> coefficients;
};

using ConductivityLaw =
    std::variant<ConstantConductivity, ExponentialConductivity, PolynomialConductivity>;

/// κ and its first two temperature derivatives at one temperature.
struct ConductivityEval {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Evaluates (κ, ∂ᵤκ, ∂²ᵤᵤκ) at u. Throws ErrorKind::ConductivityDomain when
/// κ(u) is not a positive finite number.
ConductivityEval eval_conductivity(const ConductivityLaw& law, double u);

/// Rejects malformed parameters (κ₀ ≤ 0, empty polynomial, non-finite values).
void validate_law(const ConductivityLaw& law);

std::string describe(const ConductivityLaw& law);

// ---------------------------------------------------------------------------
// Boundary and initial data
// ---------------------------------------------------------------------------

/// Dirichlet boundary temperature as a function of time.
class BoundaryValue {
public:
    static BoundaryValue constant(double value);
    static BoundaryValue from_function(std::function<double(double)> fn);

    double operator()(double t) const { return fn_(t); }

    /// Set only for constant-in-time boundaries.
    std::optional<double> constant_value() const { return constant_; }

private:
    BoundaryValue(std::function<double(double)> fn, std::optional<double> constant)
        : fn_(std::move(fn)), constant_(constant) {}

    std::function<double(double)> fn_;
    std::optional<double> constant_;
};

/// Initial temperature profile u₀(x).
class InitialProfile {
public:
    static InitialProfile constant(double value);
    /// c₀ + c₁x + … evaluated in x (not in x − a).
    static InitialProfile polynomial(std::vector<double> coefficients);
    /// 2 − (x−1)/2 + (x−1)(x−3), the rod experiment's initial profile.
    static InitialProfile rod_experiment();
    static InitialProfile from_function(std::function<double(double)> fn,
                                        std::string label = "custom");

    double operator()(double x) const { return fn_(x); }
    const std::string& label() const { return label_; }

private:
    InitialProfile(std::function<double(double)> fn, std::string label)
        : fn_(std::move(fn)), label_(std::move(label)) {}

    std::function<double(double)> fn_;
    std::string label_;
};

struct TemperatureRange {
    double min = -100.0;
    double max = 100.0;
};

// ---------------------------------------------------------------------------
// Problem definition
// ---------------------------------------------------------------------------

/// ρc_p ∂u/∂t = ∂/∂x(κ(u) ∂u/∂x) on [a, b] with Dirichlet data α(t), β(t)
/// and u(x, 0) = u₀(x). Dimensionless units.
struct ProblemSpec {
    double a = 1.0;
    double b = 3.0;
    double rho = 1.0;
    double cp = 1.0;
    ConductivityLaw conductivity = ExponentialConductivity{0.1, 0.0};
    BoundaryValue alpha = BoundaryValue::constant(2.0);
    BoundaryValue beta = BoundaryValue::constant(1.0);
    InitialProfile initial = InitialProfile::rod_experiment();
    TemperatureRange operational_range{};
};

/// Checks the hard invariants (b > a, ρ > 0, c_p > 0, valid law, κ > 0 over the
/// operational range) and throws on violation. Returns soft warnings, such as a
/// corner mismatch between u₀ and the boundary data at t = 0.
std::vector<std::string> validate(const ProblemSpec& problem);

/// max(|u₀(a) − α(0)|, |u₀(b) − β(0)|)
double corner_mismatch(const ProblemSpec& problem);

/// Rod on [1, 3], ρ = c_p = 1, κ = 0.1·exp(χu), ends held at 2 and 1.
ProblemSpec rod_problem(double chi = 0.5);

}  // namespace nlheat
