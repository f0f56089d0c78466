#pragma once

#include "nlheat/mesh.hpp"
#include "nlheat/model.hpp"
#include "nlheat/newton.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace nlheat {

enum class LawKind { Constant, Exponential, Polynomial };

/// Flat run configuration. Key names follow the usual symbol-to-variable
/// mapping (rho, Cp, kappa0, chi, tau, N, a, b, alpha, beta); every key is
/// optional and defaults to the rod experiment with χ = 0.5.
struct RunConfig {
    double a = 1.0;
    double b = 3.0;
    double rho = 1.0;
    double cp = 1.0;

    LawKind law = LawKind::Exponential;
    double kappa0 = 0.1;
    double chi = 0.5;
    std::vector<double> law_coefficients;

    double alpha = 2.0;
    double beta = 1.0;
    /// "rod" profile, a constant, or polynomial coefficients in x.
    std::variant<std::string, double, std::vector<double>> initial = std::string("rod");

    std::size_t n_nodes = 41;
    double tau = 0.5;
    double t_end = 15.0;

    NewtonConfig newton{};

    double u_min = -100.0;
    double u_max = 100.0;

    double steady_tol = 1e-9;
    std::size_t max_steps = 100000;

    std::string output = "solution";
    std::string format = "csv";

    ProblemSpec problem() const;
    ProblemSpec problem_with_chi(double chi_value) const;
    SpaceMesh space_mesh() const;
    TimeMesh time_mesh() const;
};

/// Parses and validates a config object. Unknown keys, wrong types, keys that
/// do not apply to the selected law and constraint violations in the owning
/// types all throw; malformed input uses ErrorKind::Config, mesh and domain
/// violations keep their own kinds.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig parse_run_config_text(const std::string& text);
RunConfig load_run_config(const std::string& path);

nlohmann::json to_json(const RunConfig& config);

}  // namespace nlheat
