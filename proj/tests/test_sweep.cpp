#include "doctest.h"
#include "support.hpp"

#include "fluxqed/sweep.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace fluxqed;
using fluxqed::test::rel;

namespace {

std::string config_path(const std::string& name) {
    return std::string(FLUXQED_CONFIG_DIR) + "/" + name;
}

SweepSpec spec_from(const std::string& text) {
    return sweep_from_config(Config::parse_string(text));
}

int line_count(const std::string& s) {
    return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

SweepTable strip_timestamp(SweepTable t) {
    t.metadata.timestamp.clear();
    return t;
}

}  // namespace

TEST_CASE("config parsing") {
    const Config c = Config::parse_string("# comment\n N = 3  # trailing\n\nw_over_w0=12.5\nswitches = 1, 0,1\n");
    CHECK(c.get_int("N", 0) == 3);
    CHECK(c.get_double("w_over_w0", 0.0) == 12.5);
    CHECK(c.get_ints("switches") == std::vector<int>{1, 0, 1});
    CHECK(c.get_double("d0_over_d", 7.0) == 7.0);
    CHECK_THROWS_AS(Config::parse_string("nonsense = 1\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("N 3\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("N = \n"), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("N = 3x\n").get_int("N", 0), ConfigError);
    CHECK_THROWS_AS(Config::parse_string("diagonal = maybe\n").get_bool("diagonal", false), ConfigError);
    CHECK_THROWS_AS(Config::load("/nonexistent/file.cfg"), ConfigError);

    Config o = c;
    o.apply_override("N=2");
    CHECK(o.get_int("N", 0) == 2);
    CHECK_THROWS_AS(o.apply_override("N"), ConfigError);
    CHECK_THROWS_AS(o.apply_override("bogus=1"), ConfigError);
}

TEST_CASE("config hash depends on content, not on line order") {
    const Config a = Config::parse_string("N = 2\nw_over_w0 = 10\n");
    const Config b = Config::parse_string("w_over_w0 = 10\n# note\nN = 2\n");
    const Config c = Config::parse_string("N = 2\nw_over_w0 = 11\n");
    CHECK(a.hash() == b.hash());
    CHECK(a.hash() != c.hash());
    CHECK(a.hash().size() == 16);
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("shipped recipes parse") {
    CHECK(point_from_config(Config::load(config_path("uniform.cfg"))).N == 1);
    CHECK(point_from_config(Config::load(config_path("gap_growth.cfg"))).d0_over_d == 10.0);
    const SweepSpec gap_growth = sweep_from_config(Config::load(config_path("gap_growth.cfg")));
    CHECK(gap_growth.point_count() == 4);
    const SweepSpec coupling_plane = sweep_from_config(Config::load(config_path("coupling_plane.cfg")));
    CHECK(coupling_plane.point_count() == 34 * 50);
    const SweepSpec diagonal_scaling = sweep_from_config(Config::load(config_path("diagonal_scaling.cfg")));
    CHECK(diagonal_scaling.diagonal);
    CHECK(diagonal_scaling.point_count() == 400);
    const SweepSpec two_qubit_plane = sweep_from_config(Config::load(config_path("two_qubit_plane.cfg")));
    CHECK(two_qubit_plane.two_qubit);
    CHECK(two_qubit_plane.phys.omega_a_ratio() == doctest::Approx(1.0 / 3.0));
    CHECK(sweep_from_config(Config::load(config_path("two_qubit_cut.cfg"))).diagonal);
}

TEST_CASE("run_point on the uniform recipe") {
    const PointReport r = run_point(point_from_config(Config::load(config_path("uniform.cfg"))));
    CHECK(rel(r.mode.j1, 2.0) < 1e-10);
    CHECK(r.couplings.size() == 1);
    CHECK(rel(r.couplings[0].delta, 2.0 * std::numbers::pi * 1e-4) < 1e-6);
    const nlohmann::json j = report_to_json(r);
    CHECK(j["mode"]["profile"]["X"].size() == 4001);
    CHECK(j["mode"]["j1"].get<double>() == r.mode.j1);
    CHECK(j["couplings"][0]["regime"].get<std::string>() == "strong");
    CHECK_FALSE(j.contains("two_qubit"));
}

TEST_CASE("central gap grows with w/w0 at d0/d = 10") {
    Config c = Config::load(config_path("gap_growth.cfg"));
    double previous = 0.0;
    for (const char* w : {"1", "10", "20", "30"}) {
        c.set("w_over_w0", w);
        const PointReport r = run_point(point_from_config(c));
        CHECK(r.mode.gaps_delta[0] > previous);
        previous = r.mode.gaps_delta[0];
    }
}

TEST_CASE("switches silence single sites") {
    Config c = Config::parse_string("N = 2\nw_over_w0 = 20\nd0_over_d = 10\nswitches = 1, 0\n");
    const PointReport r = run_point(point_from_config(c));
    CHECK(r.couplings[0].g_over_hbar_omega0 > 0.0);
    CHECK(r.couplings[1].g_over_hbar_omega0 == 0.0);
    CHECK(r.couplings[1].bias_current_I0 == 0.0);
    CHECK_THROWS_AS(run_point(point_from_config(c), true), UnsupportedQubits);
    c.set("switches", "1, 1, 0");
    CHECK_THROWS_AS(point_from_config(c), ConfigError);
    c.set("switches", "1, 2");
    CHECK_THROWS_AS(point_from_config(c), ConfigError);
}

TEST_CASE("two-qubit point report") {
    Config c = Config::load(config_path("two_qubit_plane.cfg"));
    c.set("w_over_w0", "10");
    c.set("d0_over_d", "5");
    const PointReport r = run_point(point_from_config(c), true);
    REQUIRE(r.two_qubit.has_value());
    CHECK(r.two_qubit->Delta == doctest::Approx(1.0 / 3.0 - r.mode.j1));
    CHECK(r.two_qubit->J == doctest::Approx(j_exact(r.two_qubit->Delta, r.couplings[0].g_over_hbar_omega0)));
    CHECK(report_to_json(r)["two_qubit"]["sign_label"].get<std::string>() == "ferromagnetic");
}

TEST_CASE("sweep specs are validated") {
    CHECK_THROWS_AS(spec_from("w_over_w0 = 3\n"), ConfigError);
    CHECK_THROWS_AS(spec_from("w_over_w0_min = 1\nw_over_w0_max = 5\nw_over_w0_steps = 1\n"), ConfigError);
    CHECK_THROWS_AS(spec_from("w_over_w0_values = 4\n"), ConfigError);
    CHECK_THROWS_AS(spec_from("w_over_w0_min = 0.5\nw_over_w0_max = 5\nw_over_w0_steps = 3\n"), ConfigError);
    CHECK_THROWS_AS(spec_from("w_over_w0_min = 1\nw_over_w0_steps = 3\n"), ConfigError);
    CHECK_THROWS_AS(spec_from("w_over_w0_values = 1, 2\nw_over_w0_steps = 2\n"), ConfigError);
    CHECK_THROWS_AS(spec_from("d0_over_d_values = 1, 2\ndiagonal = true\n"), ConfigError);
    CHECK_THROWS_AS(spec_from("w_over_w0_values = 1, 2\ntwo_qubit = true\nN = 1\n"), ConfigError);
    CHECK_THROWS_AS(spec_from("w_over_w0_values = 1, 2\nswitches = 1\n"), ConfigError);
    CHECK_THROWS_AS(spec_from("w_over_w0_values = 1, 2\nqubit_counts = 0\n"), ConfigError);
    CHECK_NOTHROW(spec_from("d0_over_d_values = 1, 2\n"));
}

TEST_CASE("grid enumeration order and row counts") {
    const SweepSpec s = spec_from(
        "w_over_w0_values = 5, 10, 20\nd0_over_d_values = 2, 4\nqubit_counts = 1, 2\n");
    const std::vector<GridPoint> grid = enumerate_grid(s);
    REQUIRE(grid.size() == 12);
    CHECK(s.point_count() == 12);
    CHECK(grid[1].w_over_w0 == 5.0);
    CHECK(grid[1].d0_over_d == 4.0);
    CHECK(grid[2].w_over_w0 == 10.0);
    CHECK(grid[6].N == 2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(grid[i].index == i);
    }
    const SweepTable t = run_sweep(s);
    CHECK(t.rows.size() == 12);
    CHECK(t.failures.empty());
    REQUIRE(t.argmax_g.has_value());
    for (const SweepRow& r : t.rows) {
        CHECK(r.g_over_hbar_omega0 <= t.rows[*t.argmax_g].g_over_hbar_omega0);
        CHECK(std::isfinite(r.g_over_hbar_omega0));
    }

    const SweepSpec d = spec_from("w_over_w0_min = 2\nw_over_w0_max = 10\nw_over_w0_steps = 5\ndiagonal = on\n");
    const std::vector<GridPoint> dg = enumerate_grid(d);
    REQUIRE(dg.size() == 5);
    CHECK(dg[4].w_over_w0 == 10.0);
    CHECK(dg[4].d0_over_d == 5.0);
}

TEST_CASE("failed points are collected and the sweep continues") {
    const SweepSpec s = spec_from("w_over_w0_values = 10, 6000, 20\n");
    const SweepTable t = run_sweep(s);
    CHECK(t.rows.size() == 2);
    REQUIRE(t.failures.size() == 1);
    CHECK(t.failures[0].index == 1);
    CHECK(t.failures[0].w_over_w0 == 6000.0);
    CHECK(t.failures[0].message.find("overlap") != std::string::npos);
    CHECK(t.rows.size() + t.failures.size() == s.point_count());
}

TEST_CASE("sweep output is independent of the worker count") {
    SweepSpec s = spec_from(
        "w_over_w0_min = 1\nw_over_w0_max = 60\nw_over_w0_steps = 7\n"
        "d0_over_d_min = 1\nd0_over_d_max = 15\nd0_over_d_steps = 5\n"
        "qubit_counts = 2\ntwo_qubit = true\n");
    const SweepTable serial = strip_timestamp(run_sweep_serial(s));
    for (const int workers : {1, 2, 4}) {
        s.numerics.workers = workers;
        CHECK(strip_timestamp(run_sweep(s)) == serial);
    }
    std::ostringstream a;
    std::ostringstream b;
    export_csv(serial, a);
    export_csv(run_sweep(s), b);
    CHECK(a.str() == b.str());
}

TEST_CASE("csv export") {
    SweepTable empty;
    std::ostringstream os;
    export_csv(empty, os);
    CHECK(os.str() == std::string(csv_header(TableKind::coupling)) + "\n");
    CHECK(std::string(csv_header(TableKind::coupling)) ==
          "w_over_w0,d0_over_d,N,j1,omega_r_over_omega0,delta_over_sqrt2,g_over_hbar_omega0");
    CHECK(std::string(csv_header(TableKind::two_qubit)) ==
          "w_over_w0,d0_over_d,omega_r_over_omega0,Delta_over_omega0,g_over_hbar_omega0,"
          "J_over_hbar_omega0,sign_label");

    const SweepTable t = run_sweep(spec_from("w_over_w0_values = 5, 10, 20\nd0_over_d = 5\n"));
    std::ostringstream csv;
    export_csv(t, csv);
    CHECK(line_count(csv.str()) == static_cast<int>(t.rows.size()) + 1);
    CHECK(csv.str().back() == '\n');
    CHECK(csv.str().find("timestamp") == std::string::npos);
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(2.0) == "2");
}

TEST_CASE("json export round-trips") {
    const SweepTable t = run_sweep(spec_from(
        "w_over_w0_values = 30, 40\nd0_over_d = 15\nqubit_counts = 2\ntwo_qubit = true\n"));
    CHECK(t.kind == TableKind::two_qubit);
    CHECK(t.argmax_J.has_value());
    CHECK(table_from_json(nlohmann::json::parse(export_json(t).dump())) == t);
    SweepTable with_failure = t;
    with_failure.failures.push_back({7, 1.0, 2.0, 3, "boom"});
    with_failure.argmax_J.reset();
    CHECK(table_from_json(export_json(with_failure)) == with_failure);
    CHECK_FALSE(export_json(t)["metadata"]["timestamp"].get<std::string>().empty());
}

TEST_CASE("argmax of g is stable under grid refinement") {
    // Over the whole design plane the maximum is well separated. Narrow
    // windows can straddle the flat ridge w d0 / (w0 d) ~ const, where the
    // argmax is ill-conditioned.
    const auto argmax = [](int steps) {
        const std::string text =
            "w_over_w0_min = 1\nw_over_w0_max = 100\nw_over_w0_steps = " + std::to_string(steps) +
            "\nd0_over_d_min = 1\nd0_over_d_max = 45\nd0_over_d_steps = " + std::to_string(steps) + "\n";
        const SweepTable t = run_sweep(spec_from(text));
        REQUIRE(t.argmax_g.has_value());
        return std::pair{t.rows[*t.argmax_g].w_over_w0, t.rows[*t.argmax_g].d0_over_d};
    };
    const auto coarse = argmax(12);
    const auto fine = argmax(23);
    CHECK(std::abs(coarse.first - fine.first) < 9.0);
    CHECK(std::abs(coarse.second - fine.second) < 4.0);
}

TEST_CASE("oracle comparison report") {
    PointConfig p = point_from_config(Config::load(config_path("uniform.cfg")));
    const OracleReport u = run_oracle_check(p, 16385);
    CHECK(u.omega_rel_error < 1e-5);
    CHECK(u.max_delta_rel_error < 1e-5);
    CHECK(u.pass);
    CHECK(u.refinement_points == std::array<int, 3>{4097, 8193, 16385});

    p.w_over_w0 = 10.0;
    p.d0_over_d = 5.0;
    const OracleReport coarse = run_oracle_check(p, 8001);
    CHECK(coarse.observed_order == doctest::Approx(2.0).epsilon(0.1));
    const OracleReport fine = run_oracle_check(p, 131073);
    CHECK(fine.omega_rel_error < 1e-3);
    CHECK(fine.pass);
    CHECK(oracle_to_json(fine)["pass"].get<bool>());
    CHECK_THROWS_AS(run_oracle_check(p, 4000), ConfigError);
}
