#include "nlheat/error.hpp"
#include "nlheat/mesh.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace nlheat;

TEST_CASE("build_space_mesh: rod experiment mesh") {
    const SpaceMesh m = build_space_mesh(1.0, 3.0, 41);
    CHECK(m.size() == 41);
    CHECK(m.h() == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(m.x(0) == 1.0);
    CHECK(m.x(40) == 3.0);
}

TEST_CASE("build_space_mesh: small meshes") {
    const SpaceMesh m3 = build_space_mesh(0.0, 1.0, 3);
    CHECK(m3.x(0) == 0.0);
    CHECK(m3.x(1) == 0.5);
    CHECK(m3.x(2) == 1.0);

    const SpaceMesh m5 = build_space_mesh(1.0, 3.0, 5);
    CHECK(m5.h() == 0.5);
    const double expected[] = {1.0, 1.5, 2.0, 2.5, 3.0};
    for (std::size_t i = 0; i < 5; ++i) CHECK(m5.x(i) == expected[i]);
}

TEST_CASE("build_space_mesh: errors") {
    try {
        build_space_mesh(0.0, 1.0, 2);
        FAIL("expected mesh error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Mesh);
    }
    try {
        build_space_mesh(1.0, 1.0, 10);
        FAIL("expected domain error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
    CHECK_THROWS_AS(build_space_mesh(2.0, 1.0, 10), Error);
}

TEST_CASE("space mesh spacing is uniform and deterministic") {
    for (std::size_t n : {3u, 7u, 41u, 201u, 1281u}) {
        for (auto [a, b] : {std::pair{1.0, 3.0}, std::pair{-0.3, 0.7}, std::pair{10.0, 1e3}}) {
            const SpaceMesh m = build_space_mesh(a, b, n);
            CHECK(m.x(0) == a);
            CHECK(m.x(n - 1) == b);
            double lo = 1e300;
            double hi = -1e300;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double d = m.x(i + 1) - m.x(i);
                CHECK(std::abs(d - m.h()) <= 1e-14 * (b - a) * 4);
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
            CHECK(hi - lo <= 1e-13 * (b - a));
            CHECK(build_space_mesh(a, b, n) == m);
        }
    }
}

TEST_CASE("build_time_mesh: level counts") {
    const TimeMesh rod = build_time_mesh(0.5, 15.0);
    CHECK(rod.levels() == 31);
    CHECK(rod.t(0) == 0.0);
    CHECK(rod.t(30) == 15.0);

    const TimeMesh single = build_time_mesh(1.0, 1.0);
    CHECK(single.levels() == 2);
    CHECK(single.t(1) == 1.0);

    const TimeMesh quarter = build_time_mesh(0.25, 1.0);
    CHECK(quarter.levels() == 5);
    const double expected[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (std::size_t n = 0; n < 5; ++n) CHECK(quarter.t(n) == expected[n]);

    const TimeMesh fine = build_time_mesh(1.0 / 512, 1.0);
    CHECK(fine.levels() == 513);
    for (std::size_t n = 1; n < fine.levels(); ++n)
        CHECK(std::abs(fine.t(n) - fine.t(n - 1) - fine.tau()) <= 1e-14 * fine.t_end());
}

TEST_CASE("build_time_mesh: errors") {
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidArgument;
    };
    CHECK(kind_of([] { build_time_mesh(0.3, 1.0); }) == ErrorKind::TimeMesh);
    CHECK(kind_of([] { build_time_mesh(0.0, 1.0); }) == ErrorKind::TimeMesh);
    CHECK(kind_of([] { build_time_mesh(-0.5, 1.0); }) == ErrorKind::TimeMesh);
    CHECK(kind_of([] { build_time_mesh(2.0, 1.0); }) == ErrorKind::TimeMesh);
}
