#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "halite/csv.hpp"
#include "halite/errors.hpp"
#include "halite/geodata.hpp"
#include "test_support.hpp"

using namespace halite;
using namespace halite::testing;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path.string();
}

}  // namespace

TEST_CASE("load_deposits parses the valid fixture") {
    const auto deposits = load_deposits(test_data("deposits_valid.geojson"));
    REQUIRE(deposits.size() == 3);

    const SaltDeposit& d1 = deposits[0];
    CHECK(d1.id == "D1");
    CHECK(d1.salt_type == SaltType::domal);
    REQUIRE(d1.depth_top_m.has_value());
    CHECK(d1.depth_top_m->min_m == 800.0);
    CHECK(d1.depth_top_m->max_m == 1200.0);
    CHECK(*d1.thickness_m == 300.0);
    CHECK(*d1.insoluble_fraction == doctest::Approx(0.10));
    CHECK(d1.area_km2 == 20.0);
    CHECK(d1.country_iso3 == "DEU");
    CHECK(d1.suitability_hint == SuitabilityHint::unknown);  // classified later
    CHECK(deposits[1].salt_type == SaltType::bedded);
}

TEST_CASE("load_deposits rejects a feature without thickness") {
    CHECK_THROWS_WITH_AS(load_deposits(test_data("deposits_bad_thickness.geojson")),
                         doctest::Contains("B1"), SchemaError);

    std::vector<LoadIssue> issues;
    const auto deposits = load_deposits(test_data("deposits_bad_thickness.geojson"), &issues);
    CHECK(deposits.empty());
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].rejected);
    CHECK(issues[0].message.find("thickness_m") != std::string::npos);
}

TEST_CASE("null thickness loads as unknown, missing depth is flagged") {
    const std::string doc = R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{"id":"U1","salt_type":"domal","thickness_m":null,
        "insoluble_fraction":null,"area_km2":20.0,"country_iso3":"DEU"},
       "geometry":{"type":"Polygon","coordinates":[[[0.0,0.0],[0.05,0.0],[0.05,0.04],[0.0,0.04],[0.0,0.0]]]}}]})";
    // 0.05 x 0.04 degrees at the equator is 5.566 x 4.4528 km -> 24.784 km2
    const std::string fixed = [&] {
        std::string s = doc;
        const std::string k = "\"area_km2\":20.0";
        s.replace(s.find(k), k.size(), "\"area_km2\":24.784");
        return s;
    }();
    std::vector<LoadIssue> issues;
    const auto deposits = load_deposits(write_temp("halite_u1.geojson", fixed), &issues);
    REQUIRE(deposits.size() == 1);
    CHECK_FALSE(deposits[0].thickness_m.has_value());
    CHECK_FALSE(deposits[0].insoluble_fraction.has_value());
    CHECK_FALSE(deposits[0].depth_top_m.has_value());
    CHECK(deposits[0].suitability_hint == SuitabilityHint::unknown);
    REQUIRE(issues.size() == 1);  // the missing-depth flag
    CHECK_FALSE(issues[0].rejected);
}

TEST_CASE("area_km2 must be consistent with the geometry") {
    const std::string doc = R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{"id":"A1","salt_type":"domal","thickness_m":300,
        "insoluble_fraction":0.1,"area_km2":100.0,"country_iso3":"DEU",
        "depth_top_min_m":800,"depth_top_max_m":1200},
       "geometry":{"type":"Polygon","coordinates":[[[0.0,0.0],[0.05,0.0],[0.05,0.04],[0.0,0.04],[0.0,0.0]]]}}]})";
    CHECK_THROWS_AS(load_deposits(write_temp("halite_a1.geojson", doc)), ValidationError);
}

TEST_CASE("self-intersecting rings are rejected, open rings are repaired") {
    // bow-tie
    const std::string bowtie = R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{"id":"X1","salt_type":"domal","thickness_m":300,
        "insoluble_fraction":0.1,"area_km2":10.0,"country_iso3":"DEU",
        "depth_top_min_m":800,"depth_top_max_m":1200},
       "geometry":{"type":"Polygon","coordinates":[[[0,0],[0.1,0.1],[0.1,0],[0,0.1],[0,0]]]}}]})";
    CHECK_THROWS_AS(load_deposits(write_temp("halite_x1.geojson", bowtie)), GeometryError);

    // same rectangle as D1 but with the closing vertex dropped
    const std::string open_ring = R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{"id":"R1","salt_type":"domal","thickness_m":300,
        "insoluble_fraction":0.1,"area_km2":24.784,"country_iso3":"DEU",
        "depth_top_min_m":800,"depth_top_max_m":1200},
       "geometry":{"type":"Polygon","coordinates":[[[0.0,0.0],[0.05,0.0],[0.05,0.04],[0.0,0.04]]]}}]})";
    const auto deposits = load_deposits(write_temp("halite_r1.geojson", open_ring));
    REQUIRE(deposits.size() == 1);
    const Ring& ring = deposits[0].geometry.polygons[0].outer;
    CHECK(ring.size() == 5);
    CHECK(ring.front().lon == ring.back().lon);
    CHECK(ring.front().lat == ring.back().lat);
}

TEST_CASE("parsing is lossless through serialize_deposits") {
    const auto deposits = load_deposits(test_data("deposits_valid.geojson"));
    const auto doc = serialize_deposits(deposits);
    const auto reloaded = load_deposits(write_temp("halite_roundtrip.geojson", doc.dump()));
    REQUIRE(reloaded.size() == deposits.size());
    for (std::size_t i = 0; i < deposits.size(); ++i) {
        CHECK(reloaded[i].id == deposits[i].id);
        CHECK(reloaded[i].area_km2 == deposits[i].area_km2);
        CHECK(reloaded[i].salt_type == deposits[i].salt_type);
        const Ring& a = deposits[i].geometry.polygons[0].outer;
        const Ring& b = reloaded[i].geometry.polygons[0].outer;
        REQUIRE(a.size() == b.size());
        for (std::size_t v = 0; v < a.size(); ++v) {
            CHECK(std::abs(a[v].lon - b[v].lon) < 1e-9);
            CHECK(std::abs(a[v].lat - b[v].lat) < 1e-9);
        }
    }
}

TEST_CASE("multipolygon deposits parse and serialize") {
    // two 10 km2 rectangles, 20 km2 total
    const std::string doc = R"({"type":"FeatureCollection","features":[
      {"type":"Feature","properties":{"id":"M1","salt_type":"bedded","thickness_m":250,
        "insoluble_fraction":0.05,"area_km2":24.784,"country_iso3":"CAN",
        "depth_top_min_m":600,"depth_top_max_m":1400},
       "geometry":{"type":"MultiPolygon","coordinates":[
         [[[0.0,0.0],[0.05,0.0],[0.05,0.02],[0.0,0.02],[0.0,0.0]]],
         [[[0.2,0.0],[0.25,0.0],[0.25,0.02],[0.2,0.02],[0.2,0.0]]]]}}]})";
    const auto deposits = load_deposits(write_temp("halite_m1.geojson", doc));
    REQUIRE(deposits.size() == 1);
    CHECK(deposits[0].geometry.polygons.size() == 2);

    const auto round = serialize_deposits(deposits);
    const auto reloaded = load_deposits(write_temp("halite_m1b.geojson", round.dump()));
    CHECK(reloaded[0].geometry.polygons.size() == 2);
}

TEST_CASE("csv parsing handles quoted fields") {
    const auto table = parse_csv("name,value\n\"salt, rock\",\"say \"\"hi\"\"\"\nplain,2\n");
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0][0] == "salt, rock");
    CHECK(table.rows[0][1] == "say \"hi\"");
    CHECK(csv_escape("salt, rock") == "\"salt, rock\"");
    CHECK(csv_escape("plain") == "plain");
    CHECK_THROWS_AS(parse_csv("a,b\n\"unterminated\n"), ValidationError);
}

TEST_CASE("exclusion manifest applies category defaults") {
    const std::string manifest = R"({"layers":[
      {"category":"settlement","path":"settlements.geojson"},
      {"category":"seismic_fault","path":"faults.geojson"},
      {"category":"airport","path":"airports.geojson"},
      {"category":"forest","path":"forest.geojson"}
    ]})";
    const auto layers = load_exclusion_manifest(write_temp("halite_manifest.json", manifest));
    REQUIRE(layers.size() == 4);
    CHECK(layers[0].buffer_m == 2000.0);
    CHECK(layers[0].applies_in_horizontal_mode);
    CHECK(layers[1].buffer_m == 200.0);
    CHECK(layers[1].applies_in_horizontal_mode);
    CHECK(layers[2].buffer_m == 20000.0);
    CHECK_FALSE(layers[2].applies_in_horizontal_mode);
    CHECK(layers[3].buffer_m == 0.0);

    SUBCASE("explicit buffer overrides the default") {
        const std::string m2 = R"([{"category":"settlement","path":"s.geojson","buffer_m":2500}])";
        const auto l2 = load_exclusion_manifest(write_temp("halite_manifest2.json", m2));
        CHECK(l2[0].buffer_m == 2500.0);
    }
    SUBCASE("unknown category") {
        const std::string m3 = R"([{"category":"volcano","path":"v.geojson"}])";
        CHECK_THROWS_AS(load_exclusion_manifest(write_temp("halite_manifest3.json", m3)),
                        ValidationError);
    }
    SUBCASE("negative buffer") {
        const std::string m4 = R"([{"category":"forest","path":"f.geojson","buffer_m":-5}])";
        CHECK_THROWS_AS(load_exclusion_manifest(write_temp("halite_manifest4.json", m4)),
                        ValidationError);
    }
    SUBCASE("settlement cannot opt out of horizontal mode") {
        const std::string m5 =
            R"([{"category":"settlement","path":"s.geojson","applies_in_horizontal_mode":false}])";
        CHECK_THROWS_AS(load_exclusion_manifest(write_temp("halite_manifest5.json", m5)),
                        ValidationError);
    }
}

TEST_CASE("demand and region tables validate their invariants") {
    const auto demand = load_demand(test_data("demand.csv"));
    REQUIRE(demand.rows.size() == 4);
    CHECK(*demand.find("DEU") == 500.0);
    CHECK(demand.find("XXX") == nullptr);

    const auto regions = load_regions(test_data("regions.csv"));
    CHECK(regions.rows.size() == 4);
    CHECK(regions.regions == std::vector<std::string>{"Europe East", "Europe West"});
    CHECK(*regions.region_of("NLD") == "Europe West");

    CHECK_THROWS_AS(
        load_demand(write_temp("halite_dup.csv", "country_iso3,annual_electricity_demand_TWh\n"
                                                 "DEU,10\nDEU,20\n")),
        ValidationError);
    CHECK_THROWS_AS(
        load_demand(write_temp("halite_neg.csv", "country_iso3,annual_electricity_demand_TWh\n"
                                                 "DEU,-1\n")),
        ValidationError);
    CHECK_THROWS_AS(load_regions(write_temp("halite_2regions.csv", "country_iso3,region_name\n"
                                                                   "DEU,A\nDEU,B\n")),
                    ValidationError);
}

TEST_CASE("build_local_grid covers the deposit plus margin deterministically") {
    // 10 km x 10 km deposit at the equator, 100 m cells, 20 km margin
    const auto deposit =
        make_deposit("G1", SaltType::domal, 10000.0, 10000.0, 500, 2000, 300, 0.1);
    const LocalGrid grid = build_local_grid(deposit, 100.0, 20000.0);
    CHECK(grid.width == 500);
    CHECK(grid.height == 500);

    SUBCASE("identical invocations give identical grids") {
        const LocalGrid again = build_local_grid(deposit, 100.0, 20000.0);
        CHECK(grid.same_extent(again));
        CHECK(grid.proj.lon0 == again.proj.lon0);
    }
    SUBCASE("every deposit vertex maps to an in-bounds cell") {
        for (const auto& p : deposit.geometry.polygons[0].outer) {
            int row = -1, col = -1;
            REQUIRE(grid.index_of(p, row, col));
            CHECK(row >= 0);
            CHECK(row < grid.height);
            CHECK(col >= 0);
            CHECK(col < grid.width);
        }
    }
    SUBCASE("zero cell size is rejected") {
        CHECK_THROWS_AS(build_local_grid(deposit, 0.0, 20000.0), ValidationError);
    }
}

TEST_CASE("local projection round trip stays within half a cell") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> lat_dist(-60.0, 60.0);
    std::uniform_real_distribution<double> off(-250000.0, 250000.0);  // +-250 km
    for (int trial = 0; trial < 50; ++trial) {
        const double lat0 = lat_dist(rng);
        const auto proj = LocalProjection::anchored_at({10.0, lat0});
        const XY local{off(rng), off(rng)};
        const XY back = proj.to_local(proj.to_lonlat(local));
        CHECK(std::abs(back.x - local.x) < 50.0);  // half of a 100 m cell
        CHECK(std::abs(back.y - local.y) < 50.0);
    }
}

TEST_CASE("polar deposits are rejected by the local projection") {
    SaltDeposit polar = make_deposit("P1", SaltType::domal, 1000.0, 1000.0, 500, 2000, 300, 0.1);
    for (auto& poly : polar.geometry.polygons)
        for (auto& v : poly.outer) v.lat += 89.0;
    CHECK_THROWS_AS(build_local_grid(polar, 100.0, 0.0), ValidationError);
}

TEST_CASE("deposits wider than 2000 km must be split") {
    SaltDeposit wide = make_deposit("W1", SaltType::domal, 100.0, 100.0, 500, 2000, 300, 0.1);
    wide.geometry = rect_multipolygon(0.0, 0.0, 2'500'000.0, 10000.0);
    wide.area_km2 = 2'500'000.0 * 10000.0 / 1e6;
    CHECK_THROWS_WITH_AS(build_local_grid(wide, 100.0, 0.0), doctest::Contains("split"),
                         ValidationError);
}
