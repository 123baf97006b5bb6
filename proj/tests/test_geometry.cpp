#include "doctest.h"
#include "support.hpp"

#include "fluxqed/geometry.hpp"

using namespace fluxqed;
using fluxqed::test::layout;

TEST_CASE("density ratio follows the parallel-plate scaling") {
    const DeviceGeometry g = DeviceGeometry::from_ratios(10.0, 5.0, 1);
    CHECK(g.density_ratio() == doctest::Approx(50.0).epsilon(1e-14));
    CHECK(DeviceGeometry::from_ratios(1.0, 1.0, 3).density_ratio() == doctest::Approx(1.0));
}

TEST_CASE("layout has 2N+3 sectors tiling the line") {
    for (int n = 1; n <= 12; ++n) {
        const SectorLayout l = layout(7.0, 3.0, n);
        REQUIRE(l.sector_count() == static_cast<std::size_t>(2 * n + 3));
        CHECK(l.qubit_count() == n);
        CHECK(l.sectors.front().x_left == -0.5);
        CHECK(l.sectors.back().x_right == 0.5);
        CHECK(l.total_width() == doctest::Approx(1.0).epsilon(1e-14));
        for (std::size_t i = 0; i + 1 < l.sectors.size(); ++i) {
            CHECK(l.sectors[i].x_right == l.sectors[i + 1].x_left);
            CHECK(l.sectors[i].width() > 0.0);
            CHECK(l.sectors[i].is_capacitance_line != l.sectors[i + 1].is_capacitance_line);
        }
        CHECK(l.mirror_symmetric());
    }
}

TEST_CASE("capacitance lines sit at -1/2 + m/(N+1) with half-width ends") {
    const int n = 4;
    const SectorLayout l = layout(20.0, 10.0, n);
    const double w = l.cap_line_width;
    CHECK(w == doctest::Approx(20e-4));
    CHECK(l.sectors.front().width() == doctest::Approx(0.5 * w));
    CHECK(l.sectors.back().width() == doctest::Approx(0.5 * w));
    for (int m = 1; m <= n; ++m) {
        const QubitSite& site = l.qubit_sites[static_cast<std::size_t>(m - 1)];
        CHECK(site.site_center == doctest::Approx(-0.5 + static_cast<double>(m) / (n + 1)));
        const Sector& s = l.sectors[site.sector_index];
        CHECK(s.is_capacitance_line);
        CHECK(s.width() == doctest::Approx(w));
        CHECK(0.5 * (s.x_left + s.x_right) == doctest::Approx(site.site_center));
        CHECK(s.density_ratio == doctest::Approx(200.0));
    }
    CHECK(l.sectors[1].width() == doctest::Approx(1.0 / (n + 1) - w));
}

TEST_CASE("locate resolves interior boundaries to the right-hand sector") {
    const SectorLayout l = layout(10.0, 5.0, 1);
    CHECK(l.locate(-0.5) == 0);
    CHECK(l.locate(0.0) == 2);
    CHECK(l.locate(l.sectors[1].x_left) == 1);
    CHECK(l.locate(l.sectors[2].x_left) == 2);
    CHECK(l.locate(0.5) == 4);
}

TEST_CASE("infeasible geometry is rejected") {
    CHECK_THROWS_AS(layout(5000.0, 1.0, 1), InvalidGeometry);   // (N+1) w = L
    CHECK_THROWS_AS(layout(1250.0, 1.0, 7), InvalidGeometry);
    CHECK_NOTHROW(layout(4999.0, 1.0, 1));
    CHECK_THROWS_AS(layout(-1.0, 1.0, 1), InvalidGeometry);
    CHECK_THROWS_AS(layout(1.0, 0.0, 1), InvalidGeometry);
    CHECK_THROWS_AS(layout(1.0, 1.0, 0), InvalidGeometry);
    DeviceGeometry g;
    g.impedance_Z = 0.0;
    CHECK_THROWS_AS(g.validate(), InvalidGeometry);
}

TEST_CASE("switching a qubit leaves the sectors untouched") {
    const SectorLayout l = layout(20.0, 10.0, 2);
    const SectorLayout off = set_switch(l, 1, false);
    CHECK_FALSE(off.qubit_sites[1].switched_on);
    CHECK(off.qubit_sites[0].switched_on);
    REQUIRE(off.sectors.size() == l.sectors.size());
    for (std::size_t i = 0; i < l.sectors.size(); ++i) {
        CHECK(off.sectors[i].x_left == l.sectors[i].x_left);
        CHECK(off.sectors[i].density_ratio == l.sectors[i].density_ratio);
    }
    CHECK_THROWS_AS(set_switch(l, 2, false), std::out_of_range);
    CHECK_THROWS_AS(set_switch(l, -1, true), std::out_of_range);
}

TEST_CASE("random layouts stay mirror symmetric") {
    test::Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        const SectorLayout l = layout(test::uniform(rng, 1.0, 100.0), test::uniform(rng, 1.0, 50.0), n);
        CHECK(l.mirror_symmetric());
        CHECK(l.total_width() == doctest::Approx(1.0).epsilon(1e-14));
    }
}
