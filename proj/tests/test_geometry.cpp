#include <doctest.h>

#include <random>

#include "psm1d/geometry.hpp"
#include "psm1d/io.hpp"

#include "test_helpers.hpp"

using namespace psm1d;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("two overlapping halves") {
    const auto dec = build_decomposition<rational>(2, rational(1), rational(1, 2));
    CHECK(dec.length == rational(3, 2));
    CHECK(dec.a == std::vector<rational>{rational(0), rational(1, 2)});
    CHECK(dec.b == std::vector<rational>{rational(1), rational(3, 2)});
    CHECK(dec.overlap_ratio() == rational(1, 2));
}

TEST_CASE("three subdomains with quarter overlap") {
    const auto dec = build_decomposition<rational>(3, rational(1), rational(1, 4));
    CHECK(dec.length == rational(5, 2));
    CHECK(dec.a == std::vector<rational>{rational(0), rational(3, 4), rational(3, 2)});
    CHECK(dec.b == std::vector<rational>{rational(1), rational(7, 4), rational(5, 2)});
}

TEST_CASE("constraint violations are named") {
    CHECK_THROWS_WITH_AS(build_decomposition<rational>(3, rational(1), rational(3, 5)),
                         doctest::Contains("ell < 2*delta"), invalid_geometry_error);
    CHECK_THROWS_WITH_AS(build_decomposition<rational>(1, rational(1), rational(1, 4)),
                         doctest::Contains("N < 2"), invalid_geometry_error);
    CHECK_THROWS_WITH_AS(build_decomposition<rational>(4, rational(1), rational(0)),
                         doctest::Contains("delta <= 0"), invalid_geometry_error);
    CHECK_THROWS_WITH_AS(build_decomposition<rational>(4, rational(1), rational(-1, 4)),
                         doctest::Contains("delta <= 0"), invalid_geometry_error);
    CHECK_THROWS_WITH_AS(build_decomposition<rational>(4, rational(1), rational(2)),
                         doctest::Contains("delta >= ell"), invalid_geometry_error);
}

TEST_CASE("half-overlap boundary ell = 2*delta is allowed") {
    const auto dec = build_decomposition<rational>(5, rational(1), rational(1, 2));
    CHECK(dec.b[0] == dec.a[2]); // neighbours-of-neighbours just touch
}

TEST_CASE("interface point layout") {
    const auto two = build_decomposition<rational>(2, rational(1), rational(1, 2));
    CHECK(interface_points(two) ==
          std::vector<rational>{rational(0), rational(1, 2), rational(1), rational(3, 2)});

    const auto three = build_decomposition<rational>(3, rational(1), rational(1, 4));
    CHECK(interface_points(three) == std::vector<rational>{rational(0), rational(3, 4), rational(1),
                                                           rational(3, 2), rational(7, 4),
                                                           rational(5, 2)});

    // The first point is the left end of the domain, the last its right end.
    for (int n = 2; n <= 9; ++n) {
        const auto dec = build_decomposition<rational>(n, rational(1), rational(1, 3));
        const auto pts = interface_points(dec);
        CHECK(pts.size() == 2 * static_cast<std::size_t>(n));
        CHECK(pts.front() == rational(0));
        CHECK(pts.back() == dec.length);
    }
}

TEST_CASE("ordering and overlap-width invariants hold for random valid geometries") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 12);
        const rational ell(1 + static_cast<long>(rng() % 8), 1 + static_cast<long>(rng() % 4));
        // delta in (0, ell/2]
        const long q = 2 + static_cast<long>(rng() % 30);
        const rational delta = ell * rational(1, q);
        const auto dec = build_decomposition<rational>(n, ell, delta);

        CHECK(dec.b[static_cast<std::size_t>(n - 1)] == dec.length);
        for (int j = 0; j + 1 < n; ++j) {
            CHECK(dec.a[j] < dec.a[j + 1]);
            CHECK(dec.a[j + 1] < dec.b[j]);
            CHECK(dec.b[j] < dec.b[j + 1]);
            CHECK(dec.b[j] - dec.a[j + 1] == delta);
        }
        for (int j = 0; j + 2 < n; ++j) CHECK(dec.a[j + 2] >= dec.b[j]);
    }
}

TEST_CASE("float backend uses the same closed formulas") {
    const auto dec = build_decomposition<double>(3, 1.0, 0.25);
    CHECK(dec.length == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(dec.a[1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(dec.b[2] == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("json document carries N, ell, delta, L and the endpoint lists") {
    const auto dec = build_decomposition<rational>(3, rational(1), rational(1, 4));
    const ordered_json j = decomposition_to_json(dec);
    CHECK(j["N"] == 3);
    CHECK(j["ell"] == "1");
    CHECK(j["delta"] == "1/4");
    CHECK(j["L"] == "5/2");
    CHECK(j["a"] == ordered_json::array({"0", "3/4", "3/2"}));
    CHECK(j["b"] == ordered_json::array({"1", "7/4", "5/2"}));

    const ordered_json jf = decomposition_to_json(to_float(dec));
    CHECK(jf["delta"] == 0.25);
}

TEST_SUITE_END();
