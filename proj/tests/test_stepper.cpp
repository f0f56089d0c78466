#include "nlheat/error.hpp"
#include "nlheat/stepper.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace nlheat;

namespace {

double line(double x) { return 2.0 - (x - 1.0) / 2.0; }

ProblemSpec uniform_problem(double c, const ConductivityLaw& law) {
    ProblemSpec p = rod_problem();
    p.conductivity = law;
    p.alpha = BoundaryValue::constant(c);
    p.beta = BoundaryValue::constant(c);
    p.initial = InitialProfile::constant(c);
    return p;
}

}  // namespace

TEST_CASE("implicit_march: constant data stays constant") {
    const SpaceMesh sm = build_space_mesh(1.0, 3.0, 41);
    const TimeMesh tm = build_time_mesh(0.5, 15.0);
    for (const ConductivityLaw& law :
         {ConductivityLaw{ExponentialConductivity{0.1, 1.0}}, ConductivityLaw{ConstantConductivity{0.1}},
          ConductivityLaw{PolynomialConductivity{{0.1, 0.02, 0.01}}}}) {
        const SolutionField f = implicit_march(uniform_problem(1.7, law), sm, tm);
        CHECK(f.levels_filled() == 31);
        for (std::size_t n = 0; n < f.levels(); ++n)
            for (std::size_t i = 0; i < f.nodes(); ++i)
                CHECK(std::abs(f.at(n, i) - 1.7) <= 1e-12);
    }
}

TEST_CASE("implicit_march: field invariants on the rod experiment") {
    const ProblemSpec p = rod_problem(0.5);
    const SpaceMesh sm = build_space_mesh(1.0, 3.0, 41);
    const TimeMesh tm = build_time_mesh(0.5, 15.0);
    const SolutionField f = implicit_march(p, sm, tm);

    REQUIRE(f.levels_filled() == 31);
    REQUIRE(f.reports().size() == 30);
    for (std::size_t i = 0; i < f.nodes(); ++i) CHECK(f.at(0, i) == p.initial(sm.x(i)));
    for (std::size_t n = 1; n < f.levels(); ++n) {
        CHECK(std::abs(f.at(n, 0) - 2.0) <= 1e-12 * 2.0);
        CHECK(std::abs(f.at(n, 40) - 1.0) <= 1e-12 * 2.0);
        const auto& report = f.reports()[n - 1];
        CHECK(report.converged);
        const auto prev = f.level(n - 1);
        CHECK(std::equal(report.initial_guess.begin(), report.initial_guess.end(), prev.begin(),
                         prev.end()));
    }
}

TEST_CASE("implicit_march: chi = 0 approaches the straight line by t = 15") {
    const SpaceMesh sm = build_space_mesh(1.0, 3.0, 41);
    const SolutionField f =
        implicit_march(rod_problem(0.0), sm, build_time_mesh(0.5, 15.0));
    double dev = 0.0;
    for (std::size_t i = 0; i < sm.size(); ++i)
        dev = std::max(dev, std::abs(f.last_level()[i] - line(sm.x(i))));
    CHECK(dev <= 0.05);
    CHECK(dev > 1e-3);  // not yet steady
}

TEST_CASE("implicit_march: chi = 0.5 agrees with the reference listing") {
    const auto port = nlheat::testing::listing_port(0.5);
    const SolutionField f = implicit_march(rod_problem(0.5), build_space_mesh(1.0, 3.0, 41),
                                           build_time_mesh(0.5, 15.0));
    double worst = 0.0;
    for (std::size_t n = 0; n < f.levels(); ++n)
        for (std::size_t i = 0; i < f.nodes(); ++i)
            worst = std::max(worst, std::abs(f.at(n, i) - port.u[n][i]));
    CHECK(worst <= 1e-6);
    for (std::size_t n = 0; n < f.reports().size(); ++n)
        CHECK(f.reports()[n].iterations == port.iterations[n]);
}

TEST_CASE("implicit_march: divergence names the step and keeps the partial field") {
    NewtonConfig cfg;
    cfg.max_iterations = 1;
    cfg.tolerance = 1e-8;
    try {
        implicit_march(rod_problem(0.5), build_space_mesh(1.0, 3.0, 41),
                       build_time_mesh(0.5, 15.0), cfg);
        FAIL("expected MarchError");
    } catch (const MarchError& e) {
        CHECK(e.kind() == ErrorKind::Divergence);
        CHECK(e.step() == 1);
        CHECK(e.partial().levels_filled() == 1);
        CHECK(e.partial().reports().size() == 1);
    }
}

TEST_CASE("implicit_march: stays within the data bounds at mesh ratio 20") {
    const SpaceMesh sm = build_space_mesh(1.0, 3.0, 41);
    const TimeMesh tm = build_time_mesh(0.5, 15.0);
    for (double chi : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        CAPTURE(chi);
        const SolutionField f = implicit_march(rod_problem(chi), sm, tm);
        for (std::size_t n = 0; n < f.levels(); ++n)
            for (std::size_t i = 0; i < f.nodes(); ++i) {
                CHECK(f.at(n, i) >= 0.4375 - 0.01);
                CHECK(f.at(n, i) <= 2.0 + 0.01);
            }
    }
}

TEST_CASE("explicit_march: blow-up at the rod experiment's mesh ratio") {
    const ExplicitResult r = explicit_march(rod_problem(0.0), build_space_mesh(1.0, 3.0, 41),
                                            build_time_mesh(0.5, 15.0));
    CHECK(r.stability.diffusivity == doctest::Approx(0.1));
    CHECK(r.stability.mesh_ratio == doctest::Approx(20.0));
    CHECK_FALSE(r.stability.predicted_stable());
    CHECK(r.stability.blow_up);
    REQUIRE(r.stability.blow_up_level.has_value());
    CHECK(*r.stability.blow_up_level < 31);
    CHECK(r.field.levels_filled() == *r.stability.blow_up_level);
}

TEST_CASE("explicit_march: constant data ignores the mesh ratio") {
    const ExplicitResult r =
        explicit_march(uniform_problem(1.2, ExponentialConductivity{0.1, 1.0}),
                       build_space_mesh(1.0, 3.0, 41), build_time_mesh(0.5, 15.0));
    CHECK_FALSE(r.stability.blow_up);
    CHECK(r.field.levels_filled() == 31);
    for (double u : r.field.last_level()) CHECK(u == 1.2);
}

TEST_CASE("explicit_march: agrees with the implicit scheme when stable") {
    // D = 0.1, h = 0.05, τ = 0.00625 gives Dτ/h² = 0.25.
    ProblemSpec p = rod_problem();
    p.conductivity = ConstantConductivity{0.1};
    const SpaceMesh sm = build_space_mesh(1.0, 3.0, 41);
    const TimeMesh tm = build_time_mesh(0.00625, 1.0);
    const ExplicitResult e = explicit_march(p, sm, tm);
    CHECK(e.stability.mesh_ratio == doctest::Approx(0.25));
    CHECK(e.stability.predicted_stable());
    CHECK_FALSE(e.stability.blow_up);
    const SolutionField im = implicit_march(p, sm, tm);
    double diff = 0.0;
    for (std::size_t n = 0; n < tm.levels(); ++n)
        for (std::size_t i = 0; i < sm.size(); ++i)
            diff = std::max(diff, std::abs(e.field.at(n, i) - im.at(n, i)));
    // Both are first order in τ with error constant ≲ 0.05 per unit time step.
    CHECK(diff <= 2.0 * 0.05 * tm.tau());
}

TEST_CASE("march_to_steady: chi = 0 reaches the straight line") {
    const SpaceMesh sm = build_space_mesh(1.0, 3.0, 41);
    const SteadyResult s = march_to_steady(rod_problem(0.0), sm, 0.5, {}, 1e-9, 100000);
    double dev = 0.0;
    for (std::size_t i = 0; i < sm.size(); ++i) dev = std::max(dev, std::abs(s.u[i] - line(sm.x(i))));
    CHECK(dev <= 1e-6);
    CHECK(s.last_change < 1e-9);
    CHECK(s.reports.size() == s.steps);
}

TEST_CASE("march_to_steady: constant data is steady after one step") {
    const SteadyResult s = march_to_steady(uniform_problem(0.8, ExponentialConductivity{0.1, 0.5}),
                                           build_space_mesh(1.0, 3.0, 21), 0.5, {}, 1e-9, 10);
    CHECK(s.steps == 1);
    for (double u : s.u) CHECK(std::abs(u - 0.8) <= 1e-14);
}

TEST_CASE("march_to_steady: chi = 1 profile is monotone and bounded") {
    const SpaceMesh sm = build_space_mesh(1.0, 3.0, 41);
    NewtonConfig cfg;
    cfg.tolerance = 1e-10;
    const double tau = 0.5;
    const SteadyResult s = march_to_steady(rod_problem(1.0), sm, tau, cfg, 1e-9, 100000);
    for (std::size_t i = 0; i + 1 < s.u.size(); ++i) CHECK(s.u[i + 1] < s.u[i]);
    for (double u : s.u) {
        CHECK(u >= 1.0);
        CHECK(u <= 2.0);
    }
    // Dropping the time term leaves a residual set by the last level change.
    const double kappa_min = 0.1 * std::exp(1.0);
    const double bound = (1.0 / tau) * s.last_change / std::sqrt(sm.h()) / kappa_min + 1e-6;
    CHECK(s.steady_residual <= bound);
}

TEST_CASE("march_to_steady: errors") {
    const SpaceMesh sm = build_space_mesh(1.0, 3.0, 21);
    ProblemSpec p = rod_problem(0.0);
    try {
        march_to_steady(p, sm, 0.5, {}, 1e-12, 3);
        FAIL("expected no-steady-state");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoSteadyState);
    }
    p.beta = BoundaryValue::from_function([](double) { return 1.0; });
    CHECK_THROWS_AS(march_to_steady(p, sm, 0.5, {}, 1e-9, 100), Error);
}
