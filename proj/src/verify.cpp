#include "nlheat/verify.hpp"

#include "nlheat/error.hpp"
#include "nlheat/newton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

namespace nlheat {

namespace {

// Composite Simpson approximation of (2/L)∫ g(x) sin(kπ(x−a)/L) dx, k = 1..K.
std::vector<double> sine_coefficients(const std::vector<double>& g_samples, double length,
                                      std::size_t modes) {
    const std::size_t panels = g_samples.size() - 1;
    const double dx = length / static_cast<double>(panels);
    std::vector<double> coeffs(modes, 0.0);
    for (std::size_t k = 1; k <= modes; ++k) {
        const double w = static_cast<double>(k) * std::numbers::pi / length;
        double sum = 0.0;
        for (std::size_t j = 0; j <= panels; ++j) {
            const double weight = (j == 0 || j == panels) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            sum += weight * g_samples[j] * std::sin(w * dx * static_cast<double>(j));
        }
        coeffs[k - 1] = (2.0 / length) * sum * dx / 3.0;
    }
    return coeffs;
}

}  // namespace

double FourierOracle::truncation_tail() const {
    if (coefficients.empty()) return 0.0;
    double last = std::abs(coefficients.back());
    if (coefficients.size() > 1) last = std::max(last, std::abs(coefficients[coefficients.size() - 2]));
    return static_cast<double>(coefficients.size()) * last;
}

FourierOracle make_fourier_oracle(double kappa0, double rho, double cp, double a, double b,
                                  double alpha, double beta, const InitialProfile& initial,
                                  std::size_t modes) {
    if (modes == 0) throw Error(ErrorKind::InvalidArgument, "oracle needs at least one mode");
    if (!(b > a)) throw Error(ErrorKind::Domain, "oracle requires a < b");
    if (!(kappa0 > 0.0) || !(rho > 0.0) || !(cp > 0.0))
        throw Error(ErrorKind::InvalidArgument, "oracle requires positive kappa0, rho, cp");

    FourierOracle oracle{kappa0, rho, cp, a, b, alpha, beta, {}, 0, 0.0};
    const double length = b - a;
    auto deviation_samples = [&](std::size_t panels) {
        std::vector<double> g(panels + 1);
        for (std::size_t j = 0; j <= panels; ++j) {
            const double s = length * static_cast<double>(j) / static_cast<double>(panels);
            const double x = a + s;
            g[j] = initial(x) - (alpha + (beta - alpha) * s / length);
        }
        return g;
    };

    // Resolve the highest mode with a few dozen points per wavelength before
    // doubling.
    std::size_t panels = std::max<std::size_t>(64, 16 * modes);
    std::vector<double> coarse = sine_coefficients(deviation_samples(panels), length, modes);
    constexpr std::size_t max_panels = std::size_t{1} << 22;
    while (true) {
        const std::size_t finer = 2 * panels;
        std::vector<double> fine = sine_coefficients(deviation_samples(finer), length, modes);
        double change = 0.0;
        double scale = 0.0;
        for (std::size_t k = 0; k < modes; ++k) {
            change = std::max(change, std::abs(fine[k] - coarse[k]));
            scale = std::max(scale, std::abs(fine[k]));
        }
        panels = finer;
        coarse = std::move(fine);
        oracle.quadrature_error = change;
        if (change <= 1e-10 * std::max(scale, 1e-300) || panels >= max_panels) break;
    }
    oracle.coefficients = std::move(coarse);
    oracle.panels = panels;
    return oracle;
}

FourierOracle make_fourier_oracle(const ProblemSpec& problem, std::size_t modes) {
    double kappa0 = 0.0;
    if (const auto* c = std::get_if<ConstantConductivity>(&problem.conductivity)) {
        kappa0 = c->kappa0;
    } else if (const auto* e = std::get_if<ExponentialConductivity>(&problem.conductivity);
               e && e->chi == 0.0) {
        kappa0 = e->kappa0;
    } else {
        throw Error(ErrorKind::InvalidArgument,
                    "Fourier oracle needs a temperature-independent conductivity");
    }
    const auto alpha = problem.alpha.constant_value();
    const auto beta = problem.beta.constant_value();
    if (!alpha || !beta)
        throw Error(ErrorKind::InvalidArgument, "Fourier oracle needs constant boundary values");
    return make_fourier_oracle(kappa0, problem.rho, problem.cp, problem.a, problem.b, *alpha,
                               *beta, problem.initial, modes);
}

double analytic_linear_solution(const FourierOracle& oracle, double x, double t) {
    const double length = oracle.b - oracle.a;
    const double s = x - oracle.a;
    double u = oracle.alpha + (oracle.beta - oracle.alpha) * s / length;
    const double d = oracle.diffusivity();
    for (std::size_t k = 1; k <= oracle.modes(); ++k) {
        const double w = static_cast<double>(k) * std::numbers::pi / length;
        const double decay = std::exp(-d * w * w * t);
        if (decay == 0.0) break;
        u += oracle.coefficients[k - 1] * std::sin(w * s) * decay;
    }
    return u;
}

double estimate_order(double error_coarse, double error_fine) {
    if (!(error_coarse > 0.0) || !(error_fine > 0.0) || !std::isfinite(error_coarse) ||
        !std::isfinite(error_fine))
        throw Error(ErrorKind::Estimator, "order estimation needs positive finite errors");
    return std::log2(error_coarse / error_fine);
}

double jacobian_fd_audit(std::span<const double> u_state, std::span<const double> u_prev_time,
                         const SpaceMesh& mesh, const ProblemSpec& problem, double tau,
                         double relative_step) {
    const TridiagonalJacobian jac = assemble_jacobian(u_state, u_prev_time, mesh, problem, tau);
    const std::size_t n = mesh.size();
    std::vector<double> u(u_state.begin(), u_state.end());
    double worst = 0.0;

    for (std::size_t j = 0; j < n; ++j) {
        const double base = u[j];
        const double step = relative_step * std::max(1.0, std::abs(base));
        const double up = base + step;
        const double down = base - step;
        u[j] = up;
        const std::vector<double> g_up =
            assemble_residual(u, u_prev_time, mesh, problem, 0.0, tau).values;
        u[j] = down;
        const std::vector<double> g_down =
            assemble_residual(u, u_prev_time, mesh, problem, 0.0, tau).values;
        u[j] = base;

        // Column j of the band touches rows j−1, j, j+1.
        const std::size_t first = j == 0 ? 0 : j - 1;
        const std::size_t last = std::min(n - 1, j + 1);
        for (std::size_t i = first; i <= last; ++i) {
            const double fd = (g_up[i] - g_down[i]) / (up - down);
            double analytic = jac.diag[i];
            if (j + 1 == i) analytic = jac.lower[i];
            if (j == i + 1) analytic = jac.upper[i];
            worst = std::max(worst, std::abs(analytic - fd) / std::max(1.0, std::abs(fd)));
        }
    }
    return worst;
}

}  // namespace nlheat
