#include "nlheat/config.hpp"
#include "nlheat/error.hpp"
#include "nlheat/io.hpp"
#include "nlheat/stepper.hpp"

#include <doctest.h>

#include <bit>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>

using namespace nlheat;

TEST_CASE("format_double round-trips bitwise") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<std::uint64_t> bits;
    int checked = 0;
    while (checked < 2000) {
        const double v = std::bit_cast<double>(bits(rng));
        if (!std::isfinite(v)) continue;
        std::istringstream in("t,x,u\n" + format_double(v) + ",0,0\n");
        const auto rec = read_solution_csv(in);
        CHECK(std::bit_cast<std::uint64_t>(rec.at(0).t) == std::bit_cast<std::uint64_t>(v));
        ++checked;
    }
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(std::numeric_limits<double>::denorm_min()) == "4.9406564584124654e-324");
}

TEST_CASE("solution CSV layout and bitwise round trip") {
    const ProblemSpec p = rod_problem(0.5);
    const SpaceMesh sm = build_space_mesh(1.0, 3.0, 5);
    const TimeMesh tm = build_time_mesh(0.5, 1.5);
    const SolutionField f = implicit_march(p, sm, tm);

    std::ostringstream out;
    write_solution_csv(out, f);
    const std::string text = out.str();
    CHECK(text.rfind("t,x,u\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);

    std::istringstream in(text);
    const auto records = read_solution_csv(in);
    REQUIRE(records.size() == 4 * 5);
    for (std::size_t n = 0; n < 4; ++n)
        for (std::size_t i = 0; i < 5; ++i) {
            const CsvRecord& r = records[n * 5 + i];
            CHECK(r.t == tm.t(n));
            CHECK(r.x == sm.x(i));
            CHECK(std::bit_cast<std::uint64_t>(r.u) == std::bit_cast<std::uint64_t>(f.at(n, i)));
        }
}

TEST_CASE("read_solution_csv rejects malformed input") {
    for (const char* text : {"a,b,c\n1,2,3\n", "t,x,u\n1,2\n", "t,x,u\n1,2,3,4\n",
                             "t,x,u\n1,two,3\n", ""}) {
        std::istringstream in(text);
        try {
            read_solution_csv(in);
            FAIL("expected io error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Io);
        }
    }
}

TEST_CASE("to_json reports") {
    NewtonReport r;
    r.converged = true;
    r.iterations = 3;
    r.correction_norms = {0.1, 1e-3, 1e-7};
    const auto j = to_json(r);
    CHECK(j.at("iterations") == 3);
    CHECK(j.at("correction_norms").size() == 3);

    StabilityReport s;
    s.mesh_ratio = 20.0;
    s.blow_up = true;
    s.blow_up_level = 4;
    const auto js = to_json(s);
    CHECK(js.at("predicted_stable") == false);
    CHECK(js.at("blow_up_level") == 4);
}

namespace {

ErrorKind parse_kind(const std::string& text) {
    try {
        parse_run_config_text(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("config unexpectedly parsed: " << text);
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("RunConfig defaults describe the rod experiment") {
    const RunConfig c = parse_run_config_text("{}");
    CHECK(c.a == 1.0);
    CHECK(c.b == 3.0);
    CHECK(c.n_nodes == 41);
    CHECK(c.tau == 0.5);
    CHECK(c.t_end == 15.0);
    CHECK(c.newton.tolerance == 1e-4);
    CHECK(c.newton.max_iterations == 50);
    CHECK(c.law == LawKind::Exponential);
    CHECK(c.chi == 0.5);
    const ProblemSpec p = c.problem();
    CHECK(p.initial(2.0) == 0.5);
    CHECK(c.time_mesh().levels() == 31);
}

TEST_CASE("RunConfig parses every field") {
    const RunConfig c = parse_run_config_text(R"({
        "a": 0, "b": 2, "rho": 2, "Cp": 3, "law": "polynomial", "coefficients": [1, 0.1],
        "alpha": 1, "beta": 1, "initial": [1], "N": 21, "tau": 0.25, "t_end": 2,
        "epsilon": 1e-8, "max_iterations": 7, "u_min": -1, "u_max": 5,
        "steady_tol": 1e-7, "max_steps": 99, "output": "run1", "format": "csv"})");
    CHECK(c.law == LawKind::Polynomial);
    CHECK(c.law_coefficients == std::vector<double>{1.0, 0.1});
    CHECK(c.n_nodes == 21);
    CHECK(c.newton.max_iterations == 7);
    CHECK(c.max_steps == 99);
    CHECK(c.output == "run1");
    CHECK(std::get<std::vector<double>>(c.initial) == std::vector<double>{1.0});
    const RunConfig round = parse_run_config(to_json(c));
    CHECK(to_json(round) == to_json(c));

    const RunConfig k = parse_run_config_text(R"({"law": "constant", "kappa0": 0.2, "initial": 1.5,
                                                  "alpha": 1.5, "beta": 1.5})");
    CHECK(k.problem().initial(2.7) == 1.5);
}

TEST_CASE("RunConfig rejects bad input") {
    CHECK(parse_kind(R"({"kappa": 0.1})") == ErrorKind::Config);
    CHECK(parse_kind(R"({"N": 2})") == ErrorKind::Mesh);
    CHECK(parse_kind(R"({"N": 4.5})") == ErrorKind::Config);
    CHECK(parse_kind(R"({"a": 3, "b": 1})") == ErrorKind::Domain);
    CHECK(parse_kind(R"({"tau": 0.3, "t_end": 1})") == ErrorKind::TimeMesh);
    CHECK(parse_kind(R"({"rho": 0})") == ErrorKind::InvalidArgument);
    CHECK(parse_kind(R"({"chi": "big"})") == ErrorKind::Config);
    CHECK(parse_kind(R"({"law": "cubic"})") == ErrorKind::Config);
    CHECK(parse_kind(R"({"law": "polynomial"})") == ErrorKind::Config);
    CHECK(parse_kind(R"({"law": "constant", "chi": 1})") == ErrorKind::Config);
    CHECK(parse_kind(R"({"coefficients": [1]})") == ErrorKind::Config);
    CHECK(parse_kind(R"({"initial": "flat"})") == ErrorKind::Config);
    CHECK(parse_kind(R"({"format": "hdf5"})") == ErrorKind::Config);
    CHECK(parse_kind(R"({"epsilon": -1})") == ErrorKind::Config);
    CHECK(parse_kind(R"({"max_iterations": 0})") == ErrorKind::Config);
    CHECK(parse_kind(R"({"output": "a/b"})") == ErrorKind::Config);
    CHECK(parse_kind(R"([1, 2])") == ErrorKind::Config);
    CHECK(parse_kind(R"({"N": 41,)") == ErrorKind::Config);
    CHECK(parse_kind(R"({"chi": -20})") == ErrorKind::ConductivityDomain);
}
