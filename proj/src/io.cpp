#include "nlheat/io.hpp"

#include "nlheat/error.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace nlheat {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

void write_record(std::ostream& out, double t, double x, double u) {
    out << format_double(t) << ',' << format_double(x) << ',' << format_double(u) << '\n';
}

double parse_field(std::string_view text, std::size_t line) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw Error(ErrorKind::Io, "malformed number on CSV line " + std::to_string(line));
    return value;
}

}  // namespace

void write_solution_csv(std::ostream& out, const SolutionField& field) {
    out << "t,x,u\n";
    for (std::size_t n = 0; n < field.levels_filled(); ++n) {
        const double t = field.time().t(n);
        for (std::size_t i = 0; i < field.nodes(); ++i)
            write_record(out, t, field.space().x(i), field.at(n, i));
    }
}

void write_solution_csv(const std::filesystem::path& path, const SolutionField& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    write_solution_csv(out, field);
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

void write_profile_csv(std::ostream& out, double t, const SpaceMesh& mesh,
                       std::span<const double> u) {
    out << "t,x,u\n";
    for (std::size_t i = 0; i < mesh.size(); ++i) write_record(out, t, mesh.x(i), u[i]);
}

std::vector<CsvRecord> read_solution_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "t,x,u")
        throw Error(ErrorKind::Io, "CSV header must be t,x,u");
    std::vector<CsvRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view(line);
        const auto c1 = view.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
        if (c2 == std::string_view::npos || view.find(',', c2 + 1) != std::string_view::npos)
            throw Error(ErrorKind::Io, "CSV line " + std::to_string(line_no) + " needs 3 fields");
        records.push_back({parse_field(view.substr(0, c1), line_no),
                           parse_field(view.substr(c1 + 1, c2 - c1 - 1), line_no),
                           parse_field(view.substr(c2 + 1), line_no)});
    }
    return records;
}

nlohmann::json to_json(const NewtonReport& report) {
    return {
        {"converged", report.converged},
        {"iterations", report.iterations},
        {"correction_norms", report.correction_norms},
        {"final_residual_norm", report.final_residual_norm},
    };
}

nlohmann::json to_json(const StabilityReport& report) {
    nlohmann::json j = {
        {"diffusivity", report.diffusivity},
        {"mesh_ratio", report.mesh_ratio},
        {"threshold", report.threshold},
        {"predicted_stable", report.predicted_stable()},
        {"blow_up", report.blow_up},
    };
    j["blow_up_level"] =
        report.blow_up_level ? nlohmann::json(*report.blow_up_level) : nlohmann::json(nullptr);
    return j;
}

}  // namespace nlheat
