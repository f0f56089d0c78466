#include "nlheat/studies.hpp"

#include "nlheat/error.hpp"
#include "nlheat/mesh.hpp"
#include "nlheat/stepper.hpp"
#include "nlheat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <variant>

namespace nlheat {

namespace {

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

void fill_orders(OrderStudy& study) {
    study.orders.clear();
    for (std::size_t i = 0; i + 1 < study.errors.size(); ++i)
        study.orders.push_back(estimate_order(study.errors[i], study.errors[i + 1]));
}

std::vector<double> final_level(const ProblemSpec& problem, std::size_t n_nodes, double tau,
                                double t_end, const NewtonConfig& config) {
    const SpaceMesh smesh = build_space_mesh(problem.a, problem.b, n_nodes);
    const SolutionField field = implicit_march(problem, smesh, build_time_mesh(tau, t_end), config);
    const auto last = field.last_level();
    return {last.begin(), last.end()};
}

}  // namespace

bool OrderStudy::orders_within(double lo, double hi) const {
    if (orders.empty()) return false;
    return std::all_of(orders.begin(), orders.end(),
                       [&](double p) { return p >= lo && p <= hi; });
}

bool temperature_independent(const ConductivityLaw& law) {
    if (std::holds_alternative<ConstantConductivity>(law)) return true;
    if (const auto* e = std::get_if<ExponentialConductivity>(&law)) return e->chi == 0.0;
    const auto& c = std::get<PolynomialConductivity>(law).coefficients;
    return std::all_of(c.begin() + 1, c.end(), [](double x) { return x == 0.0; });
}

TemporalStudy temporal_convergence(const ProblemSpec& problem, std::size_t n_nodes,
                                   const std::vector<double>& taus, double tau_ref, double t_end,
                                   const NewtonConfig& config) {
    TemporalStudy study;
    const std::vector<double> reference = final_level(problem, n_nodes, tau_ref, t_end, config);

    std::optional<FourierOracle> oracle;
    std::vector<double> exact;
    const bool linear = temperature_independent(problem.conductivity) &&
                        !std::holds_alternative<PolynomialConductivity>(problem.conductivity) &&
                        problem.alpha.constant_value() && problem.beta.constant_value();
    if (linear) {
        oracle = make_fourier_oracle(problem, 400);
        const SpaceMesh smesh = build_space_mesh(problem.a, problem.b, n_nodes);
        for (double x : smesh.nodes()) exact.push_back(analytic_linear_solution(*oracle, x, t_end));
        study.analytic.emplace();
    }

    for (double tau : taus) {
        const std::vector<double> u = final_level(problem, n_nodes, tau, t_end, config);
        study.self_reference.resolutions.push_back(tau);
        study.self_reference.errors.push_back(max_abs_diff(u, reference));
        if (study.analytic) {
            study.analytic->resolutions.push_back(tau);
            study.analytic->errors.push_back(max_abs_diff(u, exact));
        }
    }
    fill_orders(study.self_reference);
    if (study.analytic) fill_orders(*study.analytic);
    return study;
}

OrderStudy spatial_convergence(const ProblemSpec& problem, const std::vector<std::size_t>& nodes,
                               std::size_t n_ref, double tau, const NewtonConfig& config,
                               double steady_tol, std::size_t max_steps) {
    const SpaceMesh ref_mesh = build_space_mesh(problem.a, problem.b, n_ref);
    const std::vector<double> reference =
        march_to_steady(problem, ref_mesh, tau, config, steady_tol, max_steps).u;

    OrderStudy study;
    for (std::size_t n : nodes) {
        if (n < 3 || (n_ref - 1) % (n - 1) != 0)
            throw Error(ErrorKind::InvalidArgument,
                        "coarse mesh nodes must nest inside the reference mesh");
        const std::size_t stride = (n_ref - 1) / (n - 1);
        const SpaceMesh mesh = build_space_mesh(problem.a, problem.b, n);
        const std::vector<double> u =
            march_to_steady(problem, mesh, tau, config, steady_tol, max_steps).u;
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            err = std::max(err, std::abs(u[i] - reference[i * stride]));
        study.resolutions.push_back(static_cast<double>(n));
        study.errors.push_back(err);
    }
    fill_orders(study);
    return study;
}

AuditStudy jacobian_audit_study(const ProblemSpec& problem, std::size_t n_nodes, double tau,
                                std::size_t samples, std::uint64_t seed) {
    const SpaceMesh mesh = build_space_mesh(problem.a, problem.b, n_nodes);
    const std::vector<double> u0 = sample_initial(problem, mesh);

    auto [lo_it, hi_it] = std::minmax_element(u0.begin(), u0.end());
    double lo = std::min({*lo_it, problem.alpha(0.0), problem.beta(0.0)});
    double hi = std::max({*hi_it, problem.alpha(0.0), problem.beta(0.0)});
    if (hi - lo < 1e-3) {
        lo -= 0.5;
        hi += 0.5;
    }

    AuditStudy study;
    study.samples = samples;
    study.bound = temperature_independent(problem.conductivity) ? 1e-10 : 1e-5;
    study.at_initial = jacobian_fd_audit(u0, u0, mesh, problem, tau);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> state(n_nodes);
    for (std::size_t s = 0; s < samples; ++s) {
        state.front() = problem.alpha(0.0);
        state.back() = problem.beta(0.0);
        for (std::size_t i = 1; i + 1 < n_nodes; ++i) state[i] = dist(rng);
        study.worst_random =
            std::max(study.worst_random, jacobian_fd_audit(state, u0, mesh, problem, tau));
    }
    return study;
}

nlohmann::json to_json(const OrderStudy& study) {
    return {{"resolutions", study.resolutions}, {"errors", study.errors}, {"orders", study.orders}};
}

nlohmann::json to_json(const AuditStudy& study) {
    return {{"at_initial", study.at_initial},
            {"worst_random", study.worst_random},
            {"samples", study.samples},
            {"bound", study.bound},
            {"passed", study.passed()}};
}

}  // namespace nlheat
