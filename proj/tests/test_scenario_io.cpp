#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "coex/scenario_io.hpp"

using namespace coex;
using namespace coex::io;

namespace {

std::string root() {
    const char* env = std::getenv("COEX_ROOT");
    return env ? env : ".";
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/coex_test_" + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("toml subset parses tables, arrays of tables and values") {
    const std::string text = R"(
# comment
mode = "analytic"   # trailing comment
[scenario]
alpha = 4.0
flag = true
grid = [1.0, 2.5, -3.0]
label = "a # not comment"
[[entity]]
name = "A"
[[entity]]
name = "B"
)";
    const TomlDoc doc = parse_toml(text);
    CHECK(doc.root.string_or("mode", "") == "analytic");
    CHECK(doc.table("scenario").number("alpha") == 4.0);
    CHECK(doc.table("scenario").boolean_or("flag", false));
    CHECK(doc.table("scenario").string_or("label", "") == "a # not comment");
    const auto& grid = doc.table("scenario").values.at("grid");
    REQUIRE(grid.kind == TomlValue::Kind::array);
    REQUIRE(grid.array.size() == 3);
    CHECK(grid.array[2].number == -3.0);
    REQUIRE(doc.table_arrays.at("entity").size() == 2);
    CHECK(doc.table_arrays.at("entity")[1].string_or("name", "") == "B");

    CHECK_THROWS_AS(parse_toml("key"), ParameterError);
    CHECK_THROWS_AS(parse_toml("x = "), ParameterError);
    CHECK_THROWS_AS(parse_toml("x = nonsense"), ParameterError);
    CHECK_THROWS_AS(parse_toml("[broken"), ParameterError);
}

TEST_CASE("unit conversions round-trip") {
    CHECK(units::dbm_to_watt(33.0) == doctest::Approx(1.99526231).epsilon(1e-8));
    CHECK(units::dbm_to_watt(30.0) == doctest::Approx(1.0).epsilon(1e-12));
    RngStream rng(80, "units");
    for (int i = 0; i < 200; ++i) {
        const double dbm = rng.uniform(-120.0, 50.0);
        CHECK(units::watt_to_dbm(units::dbm_to_watt(dbm)) ==
              doctest::Approx(dbm).epsilon(1e-9));
        const double db = rng.uniform(-40.0, 40.0);
        CHECK(units::linear_to_db(units::db_to_linear(db)) ==
              doctest::Approx(db).epsilon(1e-9));
    }
}

TEST_CASE("load_scenario resolves the reference file with defaults and SI units") {
    const ScenarioFile sf = load_scenario(root() + "/configs/reference.toml");
    CHECK(sf.mode == "analytic");
    CHECK(sf.scenario.lambda_c == doctest::Approx(25e-6));
    CHECK(units::per_m2_to_per_km2(sf.scenario.lambda_bar_c()) ==
          doctest::Approx(22.0477845).epsilon(1e-6));
    CHECK(sf.scenario.gamma == doctest::Approx(10.0));
    CHECK(sf.scenario.alpha == 4.0);
    CHECK(sf.scenario.noise_c == 0.0);
    CHECK(sf.scenario.window_radius == 5000.0);
    CHECK(sf.entities.size() == 1);
    CHECK(sf.warnings.empty());
    CHECK(sf.resolved["scenario"]["lambda_bar_c_per_m2"].get<double>() ==
          doctest::Approx(22.0477845e-6));
}

TEST_CASE("load_scenario is total over every shipped config") {
    for (const char* name : {"reference.toml", "two_entity.toml", "cellular_vs_wifi.toml",
                             "three_entity.toml", "glasgow.toml"}) {
        const ScenarioFile sf = load_scenario(root() + "/configs/" + name);
        CHECK(!sf.entities.empty());
        CHECK(sf.resolved.contains("scenario"));
    }
}

TEST_CASE("load_scenario applies overrides and rejects unknown keys") {
    const ScenarioFile sf = load_scenario(root() + "/configs/reference.toml",
                                          {"scenario.alpha=3.5", "game.seed=9",
                                           "montecarlo.realizations=50",
                                           "montecarlo.wifi_association=\"conditioned\""});
    CHECK(sf.scenario.alpha == 3.5);
    CHECK(sf.game.seed == 9);
    CHECK(sf.mc.realizations == 50);
    CHECK(sf.mc.wifi_mode == mc::WifiAssociation::conditioned_uniform);
    CHECK_THROWS_AS(load_scenario(root() + "/configs/reference.toml", {"scenario.bogus=1"}),
                    ParameterError);
    CHECK_THROWS_AS(load_scenario(root() + "/configs/reference.toml", {"noequals"}),
                    ParameterError);
}

TEST_CASE("load_scenario enforces invariants and emits range warnings") {
    const std::string bad_shares = write_temp("shares.toml", R"(
[[entity]]
share_cellular = 0.6
share_wifi = 1.0
[[entity]]
share_cellular = 0.6
share_wifi = 0.0
)");
    CHECK_THROWS_AS(load_scenario(bad_shares), ParameterError);

    const std::string dbm = write_temp("dbm.toml", R"(
[scenario]
power_c_dbm = 33.0
lambda_c_per_km2 = 10.0
[[entity]]
share_cellular = 1.0
share_wifi = 1.0
)");
    const ScenarioFile sf = load_scenario(dbm);
    CHECK(sf.scenario.p_c == doctest::Approx(1.99526231).epsilon(1e-8));
    REQUIRE(!sf.warnings.empty());  // lambda_c below the expected range
    bool found = false;
    for (const auto& w : sf.warnings) found = found || w.find("lambda_c") != std::string::npos;
    CHECK(found);

    CHECK_THROWS_AS(load_scenario("/nonexistent/path.toml"), IoError);
}

TEST_CASE("gamma range parsing") {
    const auto g = parse_gamma_range("-10:20:1");
    REQUIRE(g.size() == 31);
    CHECK(g.front() == -10.0);
    CHECK(g.back() == 20.0);
    const auto h = parse_gamma_range("0:10:2.5");
    REQUIRE(h.size() == 5);
    CHECK_THROWS_AS(parse_gamma_range("10:0:1"), ParameterError);
    CHECK_THROWS_AS(parse_gamma_range("0:10:0"), ParameterError);
    CHECK_THROWS_AS(parse_gamma_range("junk"), ParameterError);
}

TEST_CASE("geodata loading, projection and owner assignment") {
    const std::string csv = write_temp("geo.csv",
                                       "lon,lat,kind\n"
                                       "-4.2775,55.8585,bs\n"     // centre -> (0, 0)
                                       "-4.2775,55.8585,ap\n"
                                       "-4.2675,55.8585,ap\n"     // +0.01 deg lon
                                       "-4.2775,55.8685,ap\n"     // outside bbox, dropped
                                       "-4.2800,55.8600,incumbent\n");
    const BBox bbox{-4.29, 55.85, -4.265, 55.867};
    const std::vector<double> shares{0.5, 0.5};
    const auto d = load_geodata(csv, bbox, shares, 200.0, 11);
    REQUIRE(d.size() == 4);  // one record dropped
    CHECK(d[0].x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(d[0].y == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    // 0.01 degrees of longitude at 55.8585 N
    const double want = 0.01 * 111320.0 * std::cos(55.8585 * units::pi / 180.0);
    CHECK(d[2].x == doctest::Approx(want).epsilon(1e-9));
    CHECK(want * 100.0 == doctest::Approx(62477.08).epsilon(1e-4));  // ~62.5 km per degree
    for (const auto& p : d.points)
        if (p.tier != geom::Tier::incumbent) CHECK((p.owner == 0 || p.owner == 1));

    // deterministic assignment
    const auto d2 = load_geodata(csv, bbox, shares, 200.0, 11);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i].owner == d2[i].owner);

    const std::string bad = write_temp("geo_bad.csv", "lon,lat,kind\n-4.27,55.86,tower\n");
    CHECK_THROWS_AS(load_geodata(bad, bbox, shares, 200.0, 1), DataError);
    const std::string empty = write_temp("geo_empty.csv", "lon,lat,kind\n-5.0,50.0,bs\n");
    CHECK_THROWS_AS(load_geodata(empty, bbox, shares, 200.0, 1), DataError);
}

TEST_CASE("shipped geodata sample loads inside the configured box") {
    const ScenarioFile sf = load_scenario(root() + "/configs/glasgow.toml");
    std::vector<double> shares;
    for (const auto& e : sf.entities) shares.push_back(e.v_c);
    const BBox bbox{sf.casestudy.lon_min, sf.casestudy.lat_min, sf.casestudy.lon_max,
                    sf.casestudy.lat_max};
    const auto d = load_geodata(root() + "/" + sf.casestudy.geodata_path, bbox, shares,
                                sf.scenario.rho, sf.casestudy.owner_seed);
    CHECK(d.size() >= 300);
    std::size_t incumbents = 0;
    for (const auto& p : d.points) incumbents += p.tier == geom::Tier::incumbent;
    CHECK(incumbents == 4);
}

TEST_CASE("result tables serialize deterministically with nine significant digits") {
    ResultTable t;
    t.columns = {"a", "b"};
    t.add_row({cell(1.0 / 3.0), cell(123456789.123)});
    t.add_row({cell(-2.5e-7), cell(0.0)});
    const std::string s = csv_string(t);
    CHECK(s == "a,b\n0.333333333,123456789\n-2.5e-07,0\n");
    CHECK_THROWS_AS(t.add_row({"only-one"}), ParameterError);

    ResultTable empty;
    empty.columns = {"x", "y", "z"};
    CHECK(csv_string(empty) == "x,y,z\n");

    const std::string path = "/tmp/coex_test_out.csv";
    write_csv(t, path);
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == s);

    // parsing a formatted cell recovers the value at the printed precision
    RngStream rng(81, "cells");
    for (int i = 0; i < 200; ++i) {
        const double v = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-12.0, 12.0));
        const double back = std::strtod(cell(v).c_str(), nullptr);
        CHECK(back == doctest::Approx(v).epsilon(1e-8));
    }
}
