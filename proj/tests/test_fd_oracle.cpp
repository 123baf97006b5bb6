#include "doctest.h"
#include "support.hpp"

#include "fluxqed/fd_oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace fluxqed;
using fluxqed::test::layout;
using fluxqed::test::rel;

TEST_CASE("grid places a node on every sector boundary") {
    const SectorLayout l = layout(20.0, 10.0, 3);
    const FdGrid g = make_grid(l, 4001);
    REQUIRE(g.points() == 4001);
    CHECK(g.nodes.front() == -0.5);
    CHECK(g.nodes.back() == 0.5);
    for (const Sector& s : l.sectors) {
        CHECK(std::find(g.nodes.begin(), g.nodes.end(), s.x_right) != g.nodes.end());
    }
    for (std::size_t i = 0; i + 1 < g.nodes.size(); ++i) {
        CHECK(g.nodes[i + 1] > g.nodes[i]);
    }
    const FdGrid r = refine(g);
    CHECK(r.points() == 8001);
    CHECK_THROWS_AS(make_grid(l, 1000), std::invalid_argument);
}

TEST_CASE("uniform line eigenvalues approach (k pi)^2") {
    const std::vector<FdMode> modes = fd_modes(layout(1.0, 1.0, 1), 4001, 4);
    for (int k = 1; k <= 4; ++k) {
        const double exact = std::pow(k * std::numbers::pi, 2);
        CHECK(rel(modes[static_cast<std::size_t>(k - 1)].eigenvalue, exact) < 1e-5);
        CHECK(modes[static_cast<std::size_t>(k - 1)].omega_over_omega0 == doctest::Approx(k).epsilon(1e-5));
    }
}

TEST_CASE("eigenvalue error falls at second order") {
    const SectorLayout l = layout(10.0, 5.0, 1);
    const FdGrid g0 = make_grid(l, 2001);
    const FdGrid g1 = refine(g0);
    const FdGrid g2 = refine(g1);
    const double l0 = fd_modes(g0, 2)[1].eigenvalue;
    const double l1 = fd_modes(g1, 2)[1].eigenvalue;
    const double l2 = fd_modes(g2, 2)[1].eigenvalue;
    const double order = std::log2(std::abs(l0 - l1) / std::abs(l1 - l2));
    CHECK(order == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("modes are orthonormal in the unweighted lumped inner product") {
    const SectorLayout l = layout(30.0, 15.0, 2);
    const FdGrid g = make_grid(l, 8001);
    const std::vector<FdMode> modes = fd_modes(g, 5);
    for (std::size_t i = 0; i < modes.size(); ++i) {
        CHECK(fd_inner_product(g, modes[i].profile, modes[i].profile) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(modes[i].profile[1] > 0.0);
        for (std::size_t j = 0; j < i; ++j) {
            CHECK(std::abs(fd_inner_product(g, modes[i].profile, modes[j].profile)) < 1e-10);
        }
    }
}

TEST_CASE("eigenvalues ascend and requests are bounded") {
    const FdGrid g = make_grid(layout(5.0, 5.0, 1), 1001);
    const std::vector<FdMode> modes = fd_modes(g, 6);
    for (std::size_t i = 1; i < modes.size(); ++i) {
        CHECK(modes[i].eigenvalue > modes[i - 1].eigenvalue);
    }
    CHECK_THROWS_AS(fd_modes(g, 0), std::invalid_argument);
    CHECK_THROWS_AS(fd_modes(g, 2000), std::invalid_argument);
}

TEST_CASE("profile csv has a header and one line per node") {
    const FdGrid g = make_grid(layout(5.0, 5.0, 1), 1001);
    const std::vector<FdMode> modes = fd_modes(g, 2);
    std::ostringstream os;
    write_profile_csv(os, g, modes[1]);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,X");
    int count = 0;
    while (std::getline(in, line)) {
        ++count;
        CHECK(line.find(',') != std::string::npos);
    }
    CHECK(count == 1001);
    CHECK(fd_interpolate(g, modes[1].profile, -0.5) == 0.0);
    CHECK_THROWS_AS(fd_gap(modes[1], g, layout(5.0, 5.0, 1), 3), std::out_of_range);
}
