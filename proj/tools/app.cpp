#include "app.hpp"

#include "nlheat/config.hpp"
#include "nlheat/error.hpp"
#include "nlheat/io.hpp"
#include "nlheat/stepper.hpp"
#include "nlheat/studies.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace nlheat::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<double> kDefaultChis = {-1.0, -0.5, 0.0, 0.5, 1.0};

// Studies run with a tight Newton tolerance so the iteration error stays far
// below the discretization error being measured.
constexpr double kStudyNewtonTolerance = 1e-10;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Io: return kIoError;
        case ErrorKind::Config:
        case ErrorKind::Mesh:
        case ErrorKind::Domain:
        case ErrorKind::TimeMesh:
        case ErrorKind::InvalidArgument: return kConfigError;
        default: return kDivergence;
    }
}

void report_error(std::ostream& err, const Error& e) {
    err << json{{"error", std::string(e.category())}, {"message", e.what()}}.dump() << '\n';
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create output directory " + dir.string());
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json steps_json(const SolutionField& field) {
    json steps = json::array();
    for (std::size_t n = 0; n < field.reports().size(); ++n) {
        json s = to_json(field.reports()[n]);
        s["level"] = n + 1;
        s["t"] = field.time().t(n + 1);
        steps.push_back(std::move(s));
    }
    return steps;
}

struct RunOutcome {
    int code = kOk;
    std::string message;
};

/// One implicit march written to <dir>/<stem>.csv and <stem>.summary.json.
RunOutcome run_single(const RunConfig& config, const ProblemSpec& problem, const fs::path& dir,
                      const std::string& stem) {
    const SpaceMesh smesh = config.space_mesh();
    const TimeMesh tmesh = config.time_mesh();
    std::vector<std::string> warnings;
    try {
        warnings = validate(problem);
    } catch (const Error& e) {
        return {kConfigError,
                json{{"error", std::string(e.category())}, {"message", e.what()}}.dump()};
    }

    json summary = {
        {"config", to_json(config)},
        {"law", describe(problem.conductivity)},
        {"warnings", warnings},
        {"nodes", smesh.size()},
        {"levels", tmesh.levels()},
        {"stability", to_json(stability_estimate(problem, smesh, tmesh))},
    };

    RunOutcome outcome;
    std::optional<SolutionField> field;
    try {
        field = implicit_march(problem, smesh, tmesh, config.newton);
        summary["status"] = "ok";
    } catch (const MarchError& e) {
        field = e.partial();
        summary["status"] = "failed";
        summary["error"] = {{"category", std::string(e.category())},
                            {"message", e.what()},
                            {"step", e.step()}};
        outcome.code = exit_code_for(e.kind());
        outcome.message = json{{"error", std::string(e.category())}, {"message", e.what()}}.dump();
    }

    int total_iterations = 0;
    for (const auto& r : field->reports()) total_iterations += r.iterations;
    summary["levels_completed"] = field->levels_filled();
    summary["total_newton_iterations"] = total_iterations;
    summary["steps"] = steps_json(*field);

    ensure_dir(dir);
    write_solution_csv(dir / (stem + ".csv"), *field);
    write_json(dir / (stem + ".summary.json"), summary);
    if (outcome.code == kOk) {
        std::ostringstream os;
        os << stem << ": " << field->levels_filled() << " levels x " << smesh.size()
           << " nodes, " << total_iterations << " Newton iterations";
        outcome.message = os.str();
    }
    return outcome;
}

std::vector<double> parse_chi_list(const std::string& text) {
    std::vector<double> chis;
    std::string_view rest(text);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        double value = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size())
            throw Error(ErrorKind::Config, "--chi expects a comma-separated list of numbers");
        chis.push_back(value);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return chis;
}

int cmd_run(const RunConfig& config, const fs::path& dir, std::ostream& out, std::ostream& err) {
    const RunOutcome r = run_single(config, config.problem(), dir, config.output);
    (r.code == kOk ? out : err) << r.message << '\n';
    return r.code;
}

int cmd_sweep(const RunConfig& config, const fs::path& dir, const std::vector<double>& chis,
              std::ostream& out, std::ostream& err) {
    if (chis.empty()) return kOk;
    if (config.law != LawKind::Exponential)
        throw Error(ErrorKind::Config, "sweep varies chi and needs the exponential law");

    std::vector<ProblemSpec> problems;
    for (double chi : chis) problems.push_back(config.problem_with_chi(chi));
    ensure_dir(dir);

    std::vector<std::future<RunOutcome>> runs;
    for (std::size_t i = 0; i < chis.size(); ++i) {
        runs.push_back(std::async(std::launch::async, [&, i] {
            const std::string stem = config.output + "_chi_" + format_double(chis[i]);
            try {
                return run_single(config, problems[i], dir, stem);
            } catch (const Error& e) {
                return RunOutcome{exit_code_for(e.kind()),
                                  json{{"error", std::string(e.category())},
                                       {"message", e.what()}}.dump()};
            }
        }));
    }

    int worst = kOk;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const RunOutcome r = runs[i].get();
        worst = std::max(worst, r.code);
        (r.code == kOk ? out : err) << "chi=" << format_double(chis[i]) << " exit=" << r.code
                                    << " " << r.message << '\n';
    }
    return worst;
}

int cmd_steady(const RunConfig& config, const fs::path& dir, std::ostream& out) {
    const ProblemSpec problem = config.problem();
    const SpaceMesh smesh = config.space_mesh();
    const SteadyResult steady =
        march_to_steady(problem, smesh, config.tau, config.newton, config.steady_tol,
                        config.max_steps);
    const double t = static_cast<double>(steady.steps) * config.tau;

    ensure_dir(dir);
    std::ostringstream csv;
    write_profile_csv(csv, t, smesh, steady.u);
    write_text(dir / (config.output + "_steady.csv"), csv.str());
    write_json(dir / (config.output + "_steady.summary.json"),
               {{"config", to_json(config)},
                {"steps", steady.steps},
                {"t", t},
                {"last_change", steady.last_change},
                {"steady_residual", steady.steady_residual}});
    out << "steady state after " << steady.steps << " steps (t = " << format_double(t)
        << "), last change " << steady.last_change << ", steady residual "
        << steady.steady_residual << '\n';
    return kOk;
}

int cmd_check_jacobian(const RunConfig& config, const fs::path& dir, std::ostream& out) {
    const AuditStudy audit =
        jacobian_audit_study(config.problem(), config.n_nodes, config.tau, 50, 20190601);
    ensure_dir(dir);
    write_json(dir / (config.output + "_jacobian.json"), to_json(audit));
    out << "jacobian audit: initial " << audit.at_initial << ", worst of " << audit.samples
        << " random states " << audit.worst_random << ", bound " << audit.bound << " -> "
        << (audit.passed() ? "PASS" : "FAIL") << '\n';
    return audit.passed() ? kOk : kToleranceViolated;
}

int cmd_convergence_time(const RunConfig& config, const fs::path& dir, std::ostream& out) {
    NewtonConfig newton = config.newton;
    newton.tolerance = std::min(newton.tolerance, kStudyNewtonTolerance);
    const TemporalStudy study = temporal_convergence(
        config.problem(), 201, {1.0 / 8, 1.0 / 16, 1.0 / 32}, 1.0 / 512, 1.0, newton);

    bool pass = study.self_reference.orders_within(0.8, 1.2);
    json j = {{"self_reference", to_json(study.self_reference)}, {"band", {0.8, 1.2}}};
    auto print = [&](const char* label, const OrderStudy& s) {
        out << label << ":";
        for (std::size_t i = 0; i < s.errors.size(); ++i)
            out << " tau=" << format_double(s.resolutions[i]) << " err=" << s.errors[i];
        out << " orders:";
        for (double p : s.orders) out << ' ' << p;
        out << '\n';
    };
    print("self-reference (tau_ref=1/512)", study.self_reference);
    if (study.analytic) {
        pass = pass && study.analytic->orders_within(0.8, 1.2);
        j["analytic"] = to_json(*study.analytic);
        print("analytic series", *study.analytic);
    }
    j["passed"] = pass;
    ensure_dir(dir);
    write_json(dir / (config.output + "_convergence_time.json"), j);
    out << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kOk : kToleranceViolated;
}

int cmd_convergence_space(const RunConfig& config, const fs::path& dir, std::ostream& out) {
    NewtonConfig newton = config.newton;
    newton.tolerance = std::min(newton.tolerance, kStudyNewtonTolerance);
    const OrderStudy study = spatial_convergence(config.problem(), {21, 41, 81}, 1281, config.tau,
                                                 newton, 1e-12, config.max_steps);
    const bool pass = study.orders_within(1.8, 2.2);
    out << "steady spatial errors (N_ref=1281):";
    for (std::size_t i = 0; i < study.errors.size(); ++i)
        out << " N=" << study.resolutions[i] << " err=" << study.errors[i];
    out << " orders:";
    for (double p : study.orders) out << ' ' << p;
    out << '\n' << (pass ? "PASS" : "FAIL") << '\n';
    json j = to_json(study);
    j["band"] = {1.8, 2.2};
    j["passed"] = pass;
    ensure_dir(dir);
    write_json(dir / (config.output + "_convergence_space.json"), j);
    return pass ? kOk : kToleranceViolated;
}

int cmd_compare_explicit(const RunConfig& config, const fs::path& dir, std::ostream& out) {
    const ProblemSpec problem = config.problem();
    const ExplicitResult result =
        explicit_march(problem, config.space_mesh(), config.time_mesh());
    const StabilityReport& s = result.stability;
    ensure_dir(dir);
    write_solution_csv(dir / (config.output + "_explicit.csv"), result.field);
    json j = to_json(s);
    j["levels_completed"] = result.field.levels_filled();
    write_json(dir / (config.output + "_explicit.summary.json"), j);
    out << "mesh ratio D*tau/h^2 = " << s.mesh_ratio << " (stable for <= " << s.threshold
        << "), blow-up: " << (s.blow_up ? "yes" : "no");
    if (s.blow_up_level) out << " at level " << *s.blow_up_level;
    out << '\n';
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nonlinear 1D heat conduction: implicit Euler in time, Newton finite differences in space"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string chi_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory");
    };
    auto* run_cmd = app.add_subcommand("run", "implicit march, CSV + summary");
    auto* sweep_cmd = app.add_subcommand("sweep", "implicit march for each chi");
    auto* steady_cmd = app.add_subcommand("steady", "march until the profile stops changing");
    auto* jac_cmd = app.add_subcommand("check-jacobian", "finite-difference Jacobian audit");
    auto* time_cmd = app.add_subcommand("convergence-time", "temporal order study");
    auto* space_cmd = app.add_subcommand("convergence-space", "spatial order study");
    auto* expl_cmd = app.add_subcommand("compare-explicit", "explicit Euler stability contrast");
    for (auto* sub : {run_cmd, sweep_cmd, steady_cmd, jac_cmd, time_cmd, space_cmd, expl_cmd})
        add_common(sub);
    auto* chi_opt = sweep_cmd->add_option("--chi", chi_text, "comma-separated chi values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
        return kConfigError;
    }

    RunConfig config;
    std::vector<double> chis = kDefaultChis;
    try {
        config = config_path.empty() ? parse_run_config(json::object())
                                     : load_run_config(config_path);
        if (chi_opt->count() > 0) chis = parse_chi_list(chi_text);
    } catch (const Error& e) {
        report_error(err, e);
        return kConfigError;
    }

    const fs::path dir(out_dir);
    try {
        if (*run_cmd) return cmd_run(config, dir, out, err);
        if (*sweep_cmd) return cmd_sweep(config, dir, chis, out, err);
        if (*steady_cmd) return cmd_steady(config, dir, out);
        if (*jac_cmd) return cmd_check_jacobian(config, dir, out);
        if (*time_cmd) return cmd_convergence_time(config, dir, out);
        if (*space_cmd) return cmd_convergence_space(config, dir, out);
        if (*expl_cmd) return cmd_compare_explicit(config, dir, out);
    } catch (const Error& e) {
        report_error(err, e);
        return exit_code_for(e.kind());
    }
    return kConfigError;
}

}  // namespace nlheat::cli
