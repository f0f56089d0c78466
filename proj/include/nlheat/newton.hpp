#pragma once

#include "nlheat/error.hpp"
#include "nlheat/mesh.hpp"
#include "nlheat/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nlheat {

/// G(u) for one implicit step: boundary rows u₀ − α(t), u_{N−1} − β(t);
/// interior rows u_{i+1} − 2u_i + u_{i−1} − h²f_i.
struct ResidualVector {
    std::vector<double> values;
    double time = 0.0;
};

/// N×N tridiagonal system stored by bands. lower[0] and upper[N−1] lie
/// outside the matrix and are kept at zero.
struct TridiagonalJacobian {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    std::size_t size() const noexcept { return diag.size(); }
};

struct NewtonConfig {
    /// Stop once √(h·Σ Δu_i²) < tolerance.
    double tolerance = 1e-4;
    int max_iterations = 50;
};

struct NewtonReport {
    bool converged = false;
    int iterations = 0;
    std::vector<double> correction_norms;
    double final_residual_norm = 0.0;
    /// Starting iterate, kept so callers can audit the initial-guess policy.
    std::vector<double> initial_guess;
};

struct NewtonResult {
    std::vector<double> u;
    NewtonReport report;
};

/// Raised by newton_solve; carries the iteration history up to the failure.
class NewtonError : public Error {
public:
    NewtonError(ErrorKind kind, const std::string& message, NewtonReport report)
        : Error(kind, message), report_(std::move(report)) {}

    const NewtonReport& report() const noexcept { return report_; }

private:
    NewtonReport report_;
};

/// Mesh-scaled discrete L2 norm √(h·Σ x_i²).
double scaled_l2_norm(std::span<const double> x, double h);

ResidualVector assemble_residual(std::span<const double> u_candidate,
                                 std::span<const double> u_prev_time, const SpaceMesh& mesh,
                                 const ProblemSpec& problem, double t, double tau);

/// Interior row i: (1 + ½hp_i, −2 − h²q_i, 1 − ½hp_i); boundary rows are unit.
TridiagonalJacobian assemble_jacobian(std::span<const double> u_candidate,
                                      std::span<const double> u_prev_time, const SpaceMesh& mesh,
                                      const ProblemSpec& problem, double tau);

/// Thomas algorithm without pivoting. Throws ErrorKind::SingularJacobian when a
/// pivot falls below 1e-14 times the largest magnitude in its original row.
std::vector<double> solve_tridiagonal(const TridiagonalJacobian& jacobian,
                                      std::span<const double> rhs);

/// Plain Newton: u ← u − L⁻¹G(u) until the correction norm drops below the
/// tolerance. Throws NewtonError (Divergence) on iteration cap or non-finite
/// iterates, NewtonError (SingularJacobian) when the linear solve fails.
NewtonResult newton_solve(std::span<const double> u_guess, std::span<const double> u_prev_time,
                          const SpaceMesh& mesh, const ProblemSpec& problem, double t, double tau,
                          const NewtonConfig& config = {});

}  // namespace nlheat
