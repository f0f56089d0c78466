#include "nlheat/stepper.hpp"

#include "nlheat/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlheat {

SolutionField::SolutionField(SpaceMesh space, TimeMesh time)
    : space_(std::move(space)),
      time_(std::move(time)),
      values_(space_.size() * time_.levels(), 0.0) {}

void SolutionField::set_level(std::size_t n, std::span<const double> values) {
    if (n >= levels() || values.size() != nodes())
        throw Error(ErrorKind::InvalidArgument, "level index or length out of range");
    std::copy(values.begin(), values.end(), values_.begin() + n * nodes());
    filled_ = std::max(filled_, n + 1);
}

std::vector<double> sample_initial(const ProblemSpec& problem, const SpaceMesh& mesh) {
    std::vector<double> u(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) u[i] = problem.initial(mesh.x(i));
    return u;
}

SolutionField implicit_march(const ProblemSpec& problem, const SpaceMesh& smesh,
                             const TimeMesh& tmesh, const NewtonConfig& config) {
    SolutionField field(smesh, tmesh);
    field.set_level(0, sample_initial(problem, smesh));

    for (std::size_t n = 1; n < tmesh.levels(); ++n) {
        const std::span<const double> prev = field.level(n - 1);
        try {
            NewtonResult step =
                newton_solve(prev, prev, smesh, problem, tmesh.t(n), tmesh.tau(), config);
            field.set_level(n, step.u);
            field.add_report(std::move(step.report));
        } catch (const NewtonError& e) {
            field.add_report(e.report());
            std::ostringstream os;
            os << "implicit step " << n << " failed: " << e.what();
            throw MarchError(e.kind(), n, os.str(), std::move(field));
        } catch (const Error& e) {
            std::ostringstream os;
            os << "implicit step " << n << " failed: " << e.what();
            throw MarchError(e.kind(), n, os.str(), std::move(field));
        }
    }
    return field;
}

StabilityReport stability_estimate(const ProblemSpec& problem, const SpaceMesh& smesh,
                                   const TimeMesh& tmesh) {
    const std::vector<double> u0 = sample_initial(problem, smesh);
    auto [lo_it, hi_it] = std::minmax_element(u0.begin(), u0.end());
    double lo = *lo_it;
    double hi = *hi_it;
    for (std::size_t n = 0; n < tmesh.levels(); ++n) {
        for (double g : {problem.alpha(tmesh.t(n)), problem.beta(tmesh.t(n))}) {
            lo = std::min(lo, g);
            hi = std::max(hi, g);
        }
    }

    double kappa_max = 0.0;
    constexpr int samples = 256;
    for (int i = 0; i <= samples; ++i) {
        const double u = lo + (hi - lo) * i / samples;
        kappa_max = std::max(kappa_max, eval_conductivity(problem.conductivity, u).value);
    }

    StabilityReport report;
    report.diffusivity = kappa_max / (problem.rho * problem.cp);
    report.mesh_ratio = report.diffusivity * tmesh.tau() / (smesh.h() * smesh.h());
    return report;
}

ExplicitResult explicit_march(const ProblemSpec& problem, const SpaceMesh& smesh,
                              const TimeMesh& tmesh) {
    ExplicitResult result{SolutionField(smesh, tmesh),
                          stability_estimate(problem, smesh, tmesh)};
    SolutionField& field = result.field;

    std::vector<double> u = sample_initial(problem, smesh);
    field.set_level(0, u);
    double initial_max = 1.0;
    for (double x : u) initial_max = std::max(initial_max, std::abs(x));
    const double blow_up_limit = 1e6 * initial_max;

    const std::size_t n_nodes = smesh.size();
    const double h = smesh.h();
    const double dt_over_capacity = tmesh.tau() / (problem.rho * problem.cp);
    std::vector<double> next(n_nodes);

    for (std::size_t n = 1; n < tmesh.levels(); ++n) {
        bool blown = false;
        try {
            for (std::size_t i = 1; i + 1 < n_nodes; ++i) {
                const ConductivityEval k = eval_conductivity(problem.conductivity, u[i]);
                const double v = gradient_central(u[i - 1], u[i + 1], h);
                const double second = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
                next[i] = u[i] + dt_over_capacity * (k.d1 * v * v + k.value * second);
            }
        } catch (const Error& e) {
            // κ left its valid domain because the temperatures ran away.
            if (e.kind() != ErrorKind::ConductivityDomain) throw;
            blown = true;
        }
        next.front() = problem.alpha(tmesh.t(n));
        next.back() = problem.beta(tmesh.t(n));

        if (!blown) {
            for (double x : next) {
                if (!std::isfinite(x) || std::abs(x) > blow_up_limit) {
                    blown = true;
                    break;
                }
            }
        }
        if (blown) {
            result.stability.blow_up = true;
            result.stability.blow_up_level = n;
            break;
        }
        u.swap(next);
        field.set_level(n, u);
    }
    return result;
}

SteadyResult march_to_steady(const ProblemSpec& problem, const SpaceMesh& smesh, double tau,
                             const NewtonConfig& config, double steady_tol,
                             std::size_t max_steps) {
    if (!problem.alpha.constant_value() || !problem.beta.constant_value())
        throw Error(ErrorKind::InvalidArgument,
                    "steady-state march requires time-independent boundary values");
    if (!(steady_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "steady_tol must be positive");
    if (!(tau > 0.0)) throw Error(ErrorKind::TimeMesh, "time step tau must be positive");

    const double h = smesh.h();
    SteadyResult result;
    std::vector<double> u = sample_initial(problem, smesh);
    std::vector<double> diff(u.size());

    for (std::size_t n = 1; n <= max_steps; ++n) {
        NewtonResult step =
            newton_solve(u, u, smesh, problem, static_cast<double>(n) * tau, tau, config);
        for (std::size_t i = 0; i < u.size(); ++i) diff[i] = step.u[i] - u[i];
        result.reports.push_back(std::move(step.report));
        u = std::move(step.u);
        result.last_change = scaled_l2_norm(diff, h);
        if (result.last_change < steady_tol) {
            result.steps = n;
            double residual = 0.0;
            for (std::size_t i = 1; i + 1 < u.size(); ++i) {
                const ConductivityEval k = eval_conductivity(problem.conductivity, u[i]);
                const double v = gradient_central(u[i - 1], u[i + 1], h);
                const double second = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
                residual = std::max(residual, std::abs(second + k.d1 * v * v / k.value));
            }
            result.steady_residual = residual;
            result.u = std::move(u);
            return result;
        }
    }
    std::ostringstream os;
    os << "no steady state within " << max_steps << " steps (last change "
       << result.last_change << ")";
    throw Error(ErrorKind::NoSteadyState, os.str());
}

}  // namespace nlheat
