#include "nlheat/model.hpp"

#include "nlheat/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlheat {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ConductivityEval eval_raw(const ConductivityLaw& law, double u) {
    return std::visit(
        overloaded{
            [](const ConstantConductivity& c) { return ConductivityEval{c.kappa0, 0.0, 0.0}; },
            [u](const ExponentialConductivity& e) {
                const double k = e.kappa0 * std::exp(e.chi * u);
                const double dk = e.chi * k;
                return ConductivityEval{k, dk, e.chi * dk};
            },
            [u](const PolynomialConductivity& p) {
                // Horner for value, first and second derivative together.
                ConductivityEval r;
                for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
                    r.d2 = r.d2 * u + 2.0 * r.d1;
                    r.d1 = r.d1 * u + r.value;
                    r.value = r.value * u + *it;
                }
                return r;
            },
        },
        law);
}

}  // namespace

ConductivityEval eval_conductivity(const ConductivityLaw& law, double u) {
    const ConductivityEval r = eval_raw(law, u);
    if (!(r.value > 0.0) || !std::isfinite(r.value)) {
        std::ostringstream os;
        os << "conductivity " << describe(law) << " is " << r.value << " at u = " << u;
        throw Error(ErrorKind::ConductivityDomain, os.str());
    }
    return r;
}

void validate_law(const ConductivityLaw& law) {
    std::visit(overloaded{
                   [](const ConstantConductivity& c) {
                       if (!(c.kappa0 > 0.0) || !std::isfinite(c.kappa0))
                           throw Error(ErrorKind::ConductivityDomain, "kappa0 must be positive");
                   },
                   [](const ExponentialConductivity& e) {
                       if (!(e.kappa0 > 0.0) || !std::isfinite(e.kappa0))
                           throw Error(ErrorKind::ConductivityDomain, "kappa0 must be positive");
                       if (!std::isfinite(e.chi))
                           throw Error(ErrorKind::ConductivityDomain, "chi must be finite");
                   },
                   [](const PolynomialConductivity& p) {
                       if (p.coefficients.empty())
                           throw Error(ErrorKind::ConductivityDomain,
                                       "polynomial conductivity needs at least one coefficient");
                       for (double c : p.coefficients)
                           if (!std::isfinite(c))
                               throw Error(ErrorKind::ConductivityDomain,
                                           "polynomial coefficients must be finite");
                   },
               },
               law);
}

std::string describe(const ConductivityLaw& law) {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const ConstantConductivity& c) { os << "constant(" << c.kappa0 << ")"; },
                   [&](const ExponentialConductivity& e) {
                       os << "exponential(kappa0=" << e.kappa0 << ", chi=" << e.chi << ")";
                   },
                   [&](const PolynomialConductivity& p) {
                       os << "polynomial(";
                       for (std::size_t i = 0; i < p.coefficients.size(); ++i)
                           os << (i ? ", " : "") << p.coefficients[i];
                       os << ")";
                   },
               },
               law);
    return os.str();
}

BoundaryValue BoundaryValue::constant(double value) {
    return BoundaryValue([value](double) { return value; }, value);
}

BoundaryValue BoundaryValue::from_function(std::function<double(double)> fn) {
    return BoundaryValue(std::move(fn), std::nullopt);
}

InitialProfile InitialProfile::constant(double value) {
    return InitialProfile([value](double) { return value; }, "constant");
}

InitialProfile InitialProfile::polynomial(std::vector<double> coefficients) {
    return InitialProfile(
        [c = std::move(coefficients)](double x) {
            double acc = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
            return acc;
        },
        "polynomial");
}

InitialProfile InitialProfile::rod_experiment() {
    return InitialProfile(
        [](double x) { return 2.0 - (x - 1.0) / 2.0 + (x - 1.0) * (x - 3.0); }, "rod");
}

InitialProfile InitialProfile::from_function(std::function<double(double)> fn, std::string label) {
    return InitialProfile(std::move(fn), std::move(label));
}

double corner_mismatch(const ProblemSpec& problem) {
    return std::max(std::abs(problem.initial(problem.a) - problem.alpha(0.0)),
                    std::abs(problem.initial(problem.b) - problem.beta(0.0)));
}

std::vector<std::string> validate(const ProblemSpec& problem) {
    if (!std::isfinite(problem.a) || !std::isfinite(problem.b) || !(problem.b > problem.a))
        throw Error(ErrorKind::Domain, "domain requires finite a < b");
    if (!(problem.rho > 0.0) || !std::isfinite(problem.rho))
        throw Error(ErrorKind::InvalidArgument, "density rho must be positive");
    if (!(problem.cp > 0.0) || !std::isfinite(problem.cp))
        throw Error(ErrorKind::InvalidArgument, "heat capacity Cp must be positive");
    validate_law(problem.conductivity);

    const TemperatureRange& range = problem.operational_range;
    if (!std::isfinite(range.min) || !std::isfinite(range.max) || !(range.max >= range.min))
        throw Error(ErrorKind::InvalidArgument, "operational temperature range must be finite");
    constexpr int samples = 1024;
    for (int i = 0; i <= samples; ++i) {
        const double u = range.min + (range.max - range.min) * i / samples;
        eval_conductivity(problem.conductivity, u);
    }

    std::vector<std::string> warnings;
    if (const double mismatch = corner_mismatch(problem); mismatch > 1e-12) {
        std::ostringstream os;
        os << "initial profile disagrees with boundary data at t = 0 by " << mismatch;
        warnings.push_back(os.str());
    }
    return warnings;
}

ProblemSpec rod_problem(double chi) {
    ProblemSpec p;
    p.conductivity = ExponentialConductivity{0.1, chi};
    return p;
}

}  // namespace nlheat
