#pragma once

#include "nlheat/error.hpp"
#include "nlheat/mesh.hpp"
#include "nlheat/model.hpp"
#include "nlheat/newton.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace nlheat {

/// Nodal temperatures on every time level. Level 0 is u₀ sampled on the mesh.
/// A march that stops early (divergence, explicit blow-up) leaves only the
/// first `levels_filled()` levels meaningful.
class SolutionField {
public:
    SolutionField(SpaceMesh space, TimeMesh time);

    const SpaceMesh& space() const noexcept { return space_; }
    const TimeMesh& time() const noexcept { return time_; }

    std::size_t nodes() const noexcept { return space_.size(); }
    std::size_t levels() const noexcept { return time_.levels(); }
    std::size_t levels_filled() const noexcept { return filled_; }

    double at(std::size_t level, std::size_t node) const {
        return values_[level * nodes() + node];
    }
    std::span<const double> level(std::size_t n) const {
        return {values_.data() + n * nodes(), nodes()};
    }
    std::span<const double> last_level() const { return level(filled_ - 1); }

    /// Newton reports of the implicit steps; entry n−1 belongs to level n.
    const std::vector<NewtonReport>& reports() const noexcept { return reports_; }

    void set_level(std::size_t n, std::span<const double> values);
    void add_report(NewtonReport report) { reports_.push_back(std::move(report)); }

private:
    SpaceMesh space_;
    TimeMesh time_;
    std::vector<double> values_;
    std::size_t filled_ = 0;
    std::vector<NewtonReport> reports_;
};

/// Implicit march failure at level `step()`; the partial field is retained.
class MarchError : public Error {
public:
    MarchError(ErrorKind cause, std::size_t step, const std::string& message,
               SolutionField partial)
        : Error(cause, message), step_(step), partial_(std::move(partial)) {}

    std::size_t step() const noexcept { return step_; }
    const SolutionField& partial() const noexcept { return partial_; }

private:
    std::size_t step_;
    SolutionField partial_;
};

struct StabilityReport {
    /// κ_max/(ρc_p), κ_max taken over the boundary/initial data range.
    double diffusivity = 0.0;
    double mesh_ratio = 0.0;
    double threshold = 0.5;
    bool blow_up = false;
    std::optional<std::size_t> blow_up_level;

    bool predicted_stable() const noexcept { return mesh_ratio <= threshold; }
};

struct ExplicitResult {
    SolutionField field;
    StabilityReport stability;
};

struct SteadyResult {
    std::vector<double> u;
    /// Number of implicit steps taken; the profile belongs to t = steps·τ.
    std::size_t steps = 0;
    double last_change = 0.0;
    /// max over interior nodes of |Δ²u/h² − f| with the time term dropped.
    double steady_residual = 0.0;
    std::vector<NewtonReport> reports;
};

/// u₀ sampled on the mesh.
std::vector<double> sample_initial(const ProblemSpec& problem, const SpaceMesh& mesh);

/// Implicit Euler in time, one Newton-solved boundary value problem per level,
/// each started from the previous level. Throws MarchError naming the level.
SolutionField implicit_march(const ProblemSpec& problem, const SpaceMesh& smesh,
                             const TimeMesh& tmesh, const NewtonConfig& config = {});

/// Explicit Euler reference: right-hand side ∂ᵤκ·v² + κ·Δ²u/h² evaluated at
/// the old level. Stops early, flagging blow-up, once max|u| exceeds
/// 1e6·max(1, max|u₀|) or turns non-finite.
ExplicitResult explicit_march(const ProblemSpec& problem, const SpaceMesh& smesh,
                              const TimeMesh& tmesh);

/// Diffusivity and mesh ratio for the given meshes, without marching.
StabilityReport stability_estimate(const ProblemSpec& problem, const SpaceMesh& smesh,
                                   const TimeMesh& tmesh);

/// Implicit steps of size τ until two successive levels differ by less than
/// steady_tol in the scaled L2 norm. Requires constant-in-time boundaries.
/// Throws ErrorKind::NoSteadyState after max_steps.
SteadyResult march_to_steady(const ProblemSpec& problem, const SpaceMesh& smesh, double tau,
                             const NewtonConfig& config, double steady_tol,
                             std::size_t max_steps);

}  // namespace nlheat
