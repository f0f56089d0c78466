#include "nlheat/config.hpp"

#include "nlheat/error.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace nlheat {

namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 22> known_keys = {
    "a",     "b",          "rho",    "Cp",      "law",      "kappa0",         "chi",
    "coefficients", "alpha", "beta", "initial", "N",        "tau",            "t_end",
    "epsilon", "max_iterations", "u_min", "u_max", "steady_tol", "max_steps", "output",
    "format",
};

[[noreturn]] void config_error(const std::string& message) {
    throw Error(ErrorKind::Config, message);
}

double number(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number()) config_error(std::string("'") + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) config_error(std::string("'") + key + "' must be finite");
    return d;
}

std::size_t count(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        config_error(std::string("'") + key + "' must be a non-negative integer");
    return static_cast<std::size_t>(v.get<long long>());
}

std::vector<double> number_list(const json& v, const char* key) {
    if (!v.is_array() || v.empty())
        config_error(std::string("'") + key + "' must be a non-empty array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
        if (!e.is_number()) config_error(std::string("'") + key + "' must contain numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}

}  // namespace

ProblemSpec RunConfig::problem() const { return problem_with_chi(chi); }

ProblemSpec RunConfig::problem_with_chi(double chi_value) const {
    ProblemSpec p;
    p.a = a;
    p.b = b;
    p.rho = rho;
    p.cp = cp;
    switch (law) {
        case LawKind::Constant: p.conductivity = ConstantConductivity{kappa0}; break;
        case LawKind::Exponential: p.conductivity = ExponentialConductivity{kappa0, chi_value}; break;
        case LawKind::Polynomial: p.conductivity = PolynomialConductivity{law_coefficients}; break;
    }
    p.alpha = BoundaryValue::constant(alpha);
    p.beta = BoundaryValue::constant(beta);
    if (const auto* c = std::get_if<double>(&initial)) {
        p.initial = InitialProfile::constant(*c);
    } else if (const auto* coeffs = std::get_if<std::vector<double>>(&initial)) {
        p.initial = InitialProfile::polynomial(*coeffs);
    } else {
        p.initial = InitialProfile::rod_experiment();
    }
    p.operational_range = {u_min, u_max};
    return p;
}

SpaceMesh RunConfig::space_mesh() const { return build_space_mesh(a, b, n_nodes); }

TimeMesh RunConfig::time_mesh() const { return build_time_mesh(tau, t_end); }

RunConfig parse_run_config(const json& j) {
    if (!j.is_object()) config_error("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (std::string_view k : known_keys) known = known || k == key;
        if (!known) config_error("unknown config key '" + key + "'");
    }

    RunConfig c;
    if (j.contains("a")) c.a = number(j, "a");
    if (j.contains("b")) c.b = number(j, "b");
    if (j.contains("rho")) c.rho = number(j, "rho");
    if (j.contains("Cp")) c.cp = number(j, "Cp");

    if (j.contains("law")) {
        const json& v = j.at("law");
        if (!v.is_string()) config_error("'law' must be a string");
        const std::string name = v.get<std::string>();
        if (name == "constant") c.law = LawKind::Constant;
        else if (name == "exponential") c.law = LawKind::Exponential;
        else if (name == "polynomial") c.law = LawKind::Polynomial;
        else config_error("'law' must be constant, exponential or polynomial, got '" + name + "'");
    }
    if (c.law == LawKind::Polynomial) {
        if (j.contains("kappa0") || j.contains("chi"))
            config_error("'kappa0' and 'chi' do not apply to the polynomial law");
        if (!j.contains("coefficients"))
            config_error("polynomial law needs 'coefficients'");
        c.law_coefficients = number_list(j.at("coefficients"), "coefficients");
    } else {
        if (j.contains("coefficients"))
            config_error("'coefficients' applies only to the polynomial law");
        if (c.law == LawKind::Constant && j.contains("chi"))
            config_error("'chi' does not apply to the constant law");
        if (j.contains("kappa0")) c.kappa0 = number(j, "kappa0");
        if (j.contains("chi")) c.chi = number(j, "chi");
    }

    if (j.contains("alpha")) c.alpha = number(j, "alpha");
    if (j.contains("beta")) c.beta = number(j, "beta");
    if (j.contains("initial")) {
        const json& v = j.at("initial");
        if (v.is_string()) {
            if (v.get<std::string>() != "rod")
                config_error("'initial' string must be \"rod\"");
            c.initial = std::string("rod");
        } else if (v.is_number()) {
            c.initial = v.get<double>();
        } else if (v.is_array()) {
            c.initial = number_list(v, "initial");
        } else {
            config_error("'initial' must be \"rod\", a number or an array of coefficients");
        }
    }

    if (j.contains("N")) c.n_nodes = count(j, "N");
    if (j.contains("tau")) c.tau = number(j, "tau");
    if (j.contains("t_end")) c.t_end = number(j, "t_end");
    if (j.contains("epsilon")) c.newton.tolerance = number(j, "epsilon");
    if (j.contains("max_iterations")) {
        const std::size_t m = count(j, "max_iterations");
        if (m < 1 || m > 1000000) config_error("'max_iterations' must be in [1, 1000000]");
        c.newton.max_iterations = static_cast<int>(m);
    }
    if (j.contains("u_min")) c.u_min = number(j, "u_min");
    if (j.contains("u_max")) c.u_max = number(j, "u_max");
    if (j.contains("steady_tol")) c.steady_tol = number(j, "steady_tol");
    if (j.contains("max_steps")) c.max_steps = count(j, "max_steps");
    if (j.contains("output")) {
        const json& v = j.at("output");
        if (!v.is_string() || v.get<std::string>().empty())
            config_error("'output' must be a non-empty string");
        c.output = v.get<std::string>();
        if (c.output.find('/') != std::string::npos)
            config_error("'output' is a file stem; use --out for the directory");
    }
    if (j.contains("format")) {
        const json& v = j.at("format");
        if (!v.is_string() || v.get<std::string>() != "csv")
            config_error("'format' must be \"csv\"");
    }

    if (!(c.newton.tolerance > 0.0)) config_error("'epsilon' must be positive");
    if (!(c.steady_tol > 0.0)) config_error("'steady_tol' must be positive");
    if (!(c.u_max >= c.u_min)) config_error("'u_max' must not be below 'u_min'");

    // Constraints owned by the model and mesh types.
    c.space_mesh();
    c.time_mesh();
    validate(c.problem());
    return c;
}

RunConfig parse_run_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_run_config(j);
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Config, "cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config_text(ss.str());
}

json to_json(const RunConfig& c) {
    json j = {
        {"a", c.a},   {"b", c.b},         {"rho", c.rho}, {"Cp", c.cp},
        {"alpha", c.alpha}, {"beta", c.beta}, {"N", c.n_nodes}, {"tau", c.tau},
        {"t_end", c.t_end}, {"epsilon", c.newton.tolerance},
        {"max_iterations", c.newton.max_iterations}, {"u_min", c.u_min}, {"u_max", c.u_max},
        {"steady_tol", c.steady_tol}, {"max_steps", c.max_steps}, {"output", c.output},
        {"format", c.format},
    };
    switch (c.law) {
        case LawKind::Constant:
            j["law"] = "constant";
            j["kappa0"] = c.kappa0;
            break;
        case LawKind::Exponential:
            j["law"] = "exponential";
            j["kappa0"] = c.kappa0;
            j["chi"] = c.chi;
            break;
        case LawKind::Polynomial:
            j["law"] = "polynomial";
            j["coefficients"] = c.law_coefficients;
            break;
    }
    std::visit([&](const auto& v) { j["initial"] = v; }, c.initial);
    return j;
}

}  // namespace nlheat
