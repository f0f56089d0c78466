#include "nlheat/newton.hpp"

#include "nlheat/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nlheat {

namespace {

void check_lengths(std::span<const double> u, std::span<const double> u_prev,
                   const SpaceMesh& mesh) {
    if (u.size() != mesh.size() || u_prev.size() != mesh.size()) {
        std::ostringstream os;
        os << "nodal vectors must have length " << mesh.size() << ", got " << u.size() << " and "
           << u_prev.size();
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
}

void check_finite(std::span<const double> u, const char* what) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!std::isfinite(u[i])) {
            std::ostringstream os;
            os << what << " is not finite at node " << i;
            throw Error(ErrorKind::NonFiniteState, os.str());
        }
    }
}

}  // namespace

double scaled_l2_norm(std::span<const double> x, double h) {
    double sum = 0.0;
    for (double xi : x) sum += xi * xi;
    return std::sqrt(h * sum);
}

ResidualVector assemble_residual(std::span<const double> u_candidate,
                                 std::span<const double> u_prev_time, const SpaceMesh& mesh,
                                 const ProblemSpec& problem, double t, double tau) {
    check_lengths(u_candidate, u_prev_time, mesh);
    check_finite(u_candidate, "candidate state");

    const std::size_t n = mesh.size();
    const double h = mesh.h();
    const double rate = capacity_rate(problem.rho, problem.cp, tau);

    ResidualVector g;
    g.time = t;
    g.values.resize(n);
    g.values.front() = u_candidate.front() - problem.alpha(t);
    g.values.back() = u_candidate.back() - problem.beta(t);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double v = gradient_central(u_candidate[i - 1], u_candidate[i + 1], h);
        const NodeEval node =
            eval_node(u_candidate[i], u_prev_time[i], v, rate, problem.conductivity);
        g.values[i] =
            u_candidate[i + 1] - 2.0 * u_candidate[i] + u_candidate[i - 1] - h * h * node.f;
    }
    return g;
}

TridiagonalJacobian assemble_jacobian(std::span<const double> u_candidate,
                                      std::span<const double> u_prev_time, const SpaceMesh& mesh,
                                      const ProblemSpec& problem, double tau) {
    check_lengths(u_candidate, u_prev_time, mesh);
    check_finite(u_candidate, "candidate state");

    const std::size_t n = mesh.size();
    const double h = mesh.h();
    const double rate = capacity_rate(problem.rho, problem.cp, tau);

    TridiagonalJacobian jac;
    jac.lower.assign(n, 0.0);
    jac.diag.assign(n, 0.0);
    jac.upper.assign(n, 0.0);
    jac.diag.front() = 1.0;
    jac.diag.back() = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double v = gradient_central(u_candidate[i - 1], u_candidate[i + 1], h);
        const NodeEval node =
            eval_node(u_candidate[i], u_prev_time[i], v, rate, problem.conductivity);
        jac.lower[i] = 1.0 + 0.5 * h * node.p;
        jac.diag[i] = -2.0 - h * h * node.q;
        jac.upper[i] = 1.0 - 0.5 * h * node.p;
    }
    return jac;
}

std::vector<double> solve_tridiagonal(const TridiagonalJacobian& jacobian,
                                      std::span<const double> rhs) {
    const std::size_t n = jacobian.size();
    if (n == 0 || jacobian.lower.size() != n || jacobian.upper.size() != n || rhs.size() != n)
        throw Error(ErrorKind::InvalidArgument, "tridiagonal system has inconsistent sizes");

    const auto& lo = jacobian.lower;
    const auto& di = jacobian.diag;
    const auto& up = jacobian.upper;

    auto check_pivot = [&](std::size_t i, double pivot) {
        const double row_scale = std::max({std::abs(lo[i]), std::abs(di[i]), std::abs(up[i])});
        if (!(std::abs(pivot) >= 1e-14 * row_scale) || pivot == 0.0) {
            std::ostringstream os;
            os << "near-zero pivot " << pivot << " in row " << i;
            throw Error(ErrorKind::SingularJacobian, os.str());
        }
    };

    // Forward sweep: c' holds the modified super-diagonal, d' the modified rhs.
    std::vector<double> c(n, 0.0);
    std::vector<double> d(n, 0.0);
    check_pivot(0, di[0]);
    c[0] = up[0] / di[0];
    d[0] = rhs[0] / di[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double pivot = di[i] - lo[i] * c[i - 1];
        check_pivot(i, pivot);
        c[i] = up[i] / pivot;
        d[i] = (rhs[i] - lo[i] * d[i - 1]) / pivot;
    }

    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    return x;
}

NewtonResult newton_solve(std::span<const double> u_guess, std::span<const double> u_prev_time,
                          const SpaceMesh& mesh, const ProblemSpec& problem, double t, double tau,
                          const NewtonConfig& config) {
    if (!(config.tolerance > 0.0))
        throw Error(ErrorKind::InvalidArgument, "Newton tolerance must be positive");
    if (config.max_iterations < 1)
        throw Error(ErrorKind::InvalidArgument, "Newton max_iterations must be at least 1");
    check_lengths(u_guess, u_prev_time, mesh);
    check_finite(u_guess, "initial guess");
    check_finite(u_prev_time, "previous time level");

    NewtonResult result;
    NewtonReport& report = result.report;
    report.initial_guess.assign(u_guess.begin(), u_guess.end());
    std::vector<double> u(u_guess.begin(), u_guess.end());
    const double h = mesh.h();

    for (int k = 0; k < config.max_iterations; ++k) {
        const ResidualVector g = assemble_residual(u, u_prev_time, mesh, problem, t, tau);
        const TridiagonalJacobian jac = assemble_jacobian(u, u_prev_time, mesh, problem, tau);

        std::vector<double> delta;
        try {
            delta = solve_tridiagonal(jac, g.values);
        } catch (const Error& e) {
            throw NewtonError(e.kind(), e.what(), report);
        }

        for (std::size_t i = 0; i < u.size(); ++i) u[i] -= delta[i];
        const double norm = scaled_l2_norm(delta, h);
        report.correction_norms.push_back(norm);
        report.iterations = k + 1;

        if (!std::isfinite(norm) || !std::all_of(u.begin(), u.end(), [](double x) {
                return std::isfinite(x);
            })) {
            std::ostringstream os;
            os << "Newton iterate became non-finite at iteration " << k + 1 << " (t = " << t
               << ")";
            throw NewtonError(ErrorKind::Divergence, os.str(), report);
        }
        if (norm < config.tolerance) {
            report.converged = true;
            break;
        }
    }

    if (!report.converged) {
        std::ostringstream os;
        os << "Newton did not converge in " << config.max_iterations
           << " iterations (t = " << t << ", last correction "
           << report.correction_norms.back() << ")";
        throw NewtonError(ErrorKind::Divergence, os.str(), report);
    }

    report.final_residual_norm =
        scaled_l2_norm(assemble_residual(u, u_prev_time, mesh, problem, t, tau).values, h);
    result.u = std::move(u);
    return result;
}

}  // namespace nlheat
