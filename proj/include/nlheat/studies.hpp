#pragma once

#include "nlheat/model.hpp"
#include "nlheat/newton.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

namespace nlheat {

// Refinement studies and audits behind the CLI's verification subcommands.

struct OrderStudy {
    /// Time steps or node counts, coarse to fine (each a factor two apart).
    std::vector<double> resolutions;
    /// Max-norm errors against the reference.
    std::vector<double> errors;
    /// orders[i] = log₂(errors[i]/errors[i+1])
    std::vector<double> orders;

    bool orders_within(double lo, double hi) const;
};

struct TemporalStudy {
    /// Against the finest-τ run of the same scheme.
    OrderStudy self_reference;
    /// Against the analytic series, when the law is temperature-independent.
    std::optional<OrderStudy> analytic;
};

/// Errors at t_end on an N-node mesh for each τ, against a τ_ref run and, for
/// ∂ᵤκ ≡ 0, against the Fourier series.
TemporalStudy temporal_convergence(const ProblemSpec& problem, std::size_t n_nodes,
                                   const std::vector<double>& taus, double tau_ref, double t_end,
                                   const NewtonConfig& config);

/// Steady-state errors on the coarse meshes against an n_ref-node steady
/// solution, compared on shared nodes. Each (n − 1) must divide (n_ref − 1).
OrderStudy spatial_convergence(const ProblemSpec& problem, const std::vector<std::size_t>& nodes,
                               std::size_t n_ref, double tau, const NewtonConfig& config,
                               double steady_tol, std::size_t max_steps);

struct AuditStudy {
    double at_initial = 0.0;
    double worst_random = 0.0;
    std::size_t samples = 0;
    double bound = 0.0;

    bool passed() const noexcept { return at_initial <= bound && worst_random <= bound; }
};

/// True when ∂ᵤκ vanishes identically, so the residual is affine in u.
bool temperature_independent(const ConductivityLaw& law);

/// Jacobian audit at u₀ and at `samples` random interior states drawn
/// uniformly from the data range [min u₀ ∪ α ∪ β, max …]. The bound is
/// 1e-10 for temperature-independent laws and 1e-5 otherwise.
AuditStudy jacobian_audit_study(const ProblemSpec& problem, std::size_t n_nodes, double tau,
                                std::size_t samples, std::uint64_t seed);

nlohmann::json to_json(const OrderStudy& study);
nlohmann::json to_json(const AuditStudy& study);

}  // namespace nlheat
