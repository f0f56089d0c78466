#pragma once

#include "nlheat/newton.hpp"
#include "nlheat/stepper.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace nlheat {

/// Shortest decimal form with 17 significant digits; parses back bitwise.
std::string format_double(double value);

/// Long-form CSV: header `t,x,u`, one record per (level, node), levels in
/// order then nodes in order, LF endings. Only filled levels are written.
void write_solution_csv(std::ostream& out, const SolutionField& field);
void write_solution_csv(const std::filesystem::path& path, const SolutionField& field);

/// Same format for a single profile at time t.
void write_profile_csv(std::ostream& out, double t, const SpaceMesh& mesh,
                       std::span<const double> u);

struct CsvRecord {
    double t = 0.0;
    double x = 0.0;
    double u = 0.0;
};

/// Throws ErrorKind::Io on a malformed header or record.
std::vector<CsvRecord> read_solution_csv(std::istream& in);

nlohmann::json to_json(const NewtonReport& report);
nlohmann::json to_json(const StabilityReport& report);

}  // namespace nlheat
