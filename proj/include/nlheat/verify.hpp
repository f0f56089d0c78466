#pragma once

#include "nlheat/mesh.hpp"
#include "nlheat/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nlheat {

/// Closed-form solution of the constant-conductivity problem with constant
/// Dirichlet data:
///
///   u(x,t) = ℓ(x) + Σ_k b_k sin(kπ(x−a)/L) exp(−D(kπ/L)²t),  D = κ₀/(ρc_p)
///
/// where ℓ is the straight line through the boundary values and b_k are the
/// sine coefficients of u₀ − ℓ, integrated numerically.
struct FourierOracle {
    double kappa0 = 0.0;
    double rho = 1.0;
    double cp = 1.0;
    double a = 0.0;
    double b = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    /// coefficients[k−1] = b_k
    std::vector<double> coefficients;
    /// Composite Simpson panel count at which panel doubling settled.
    std::size_t panels = 0;
    /// max_k |b_k(2n) − b_k(n)| at the final doubling.
    double quadrature_error = 0.0;

    std::size_t modes() const noexcept { return coefficients.size(); }
    double diffusivity() const noexcept { return kappa0 / (rho * cp); }
    /// K·max(|b_{K−1}|, |b_K|), a rough bound on the discarded modes at t = 0.
    double truncation_tail() const;
};

/// Throws ErrorKind::InvalidArgument when modes == 0 or the data is invalid.
FourierOracle make_fourier_oracle(double kappa0, double rho, double cp, double a, double b,
                                  double alpha, double beta, const InitialProfile& initial,
                                  std::size_t modes);

/// Builds the oracle for a problem whose law has ∂ᵤκ ≡ 0 (constant, or
/// exponential with χ = 0) and whose boundary values are constant in time.
FourierOracle make_fourier_oracle(const ProblemSpec& problem, std::size_t modes);

double analytic_linear_solution(const FourierOracle& oracle, double x, double t);

/// log₂(error_coarse/error_fine) for a factor-two refinement.
/// Throws ErrorKind::Estimator unless both errors are positive and finite.
double estimate_order(double error_coarse, double error_fine);

/// Largest relative discrepancy max |L_ij − FD_ij| / max(1, |FD_ij|) over the
/// tridiagonal band, FD_ij being the central difference of the residual with
/// step relative_step·max(1, |u_j|).
double jacobian_fd_audit(std::span<const double> u_state, std::span<const double> u_prev_time,
                         const SpaceMesh& mesh, const ProblemSpec& problem, double tau,
                         double relative_step = 1e-5);

}  // namespace nlheat
