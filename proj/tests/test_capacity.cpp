#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "halite/capacity.hpp"
#include "halite/errors.hpp"
#include "test_support.hpp"

using namespace halite;
using namespace halite::testing;

namespace {

CavernPlacement domal_at(double top_m, double phi = 0.0) {
    CavernPlacement p;
    p.spec = CavernSpec::for_salt_type(SaltType::domal, 4);
    p.cavern_top_depth_m = top_m;
    p.insoluble_fraction = phi;
    return p;
}

}  // namespace

TEST_CASE("lithostatic pressure is rho g d") {
    const ThermoParams params;
    CHECK(lithostatic_pressure_Pa(1000.0, params) == 2550.0 * 9.81 * 1000.0);
    CHECK(lithostatic_pressure_Pa(1000.0, params) / 1e6 == doctest::Approx(25.0155).epsilon(1e-12));
    CHECK(lithostatic_pressure_Pa(500.0, params) / 1e6 == doctest::Approx(12.508).epsilon(1e-4));
    CHECK(lithostatic_pressure_Pa(2000.0, params) / 1e6 == doctest::Approx(50.031).epsilon(1e-4));
    CHECK_THROWS_AS(lithostatic_pressure_Pa(0.0, params), ValidationError);
    CHECK_THROWS_AS(lithostatic_pressure_Pa(-10.0, params), ValidationError);
}

TEST_CASE("operating pressures follow the 0.8 / 0.3 factors") {
    const ThermoParams params;
    const auto b = operating_pressures(25.0155e6, params);
    CHECK(b.p_max_Pa / 1e6 == doctest::Approx(20.012).epsilon(1e-4));
    CHECK(b.p_min_Pa / 1e6 == doctest::Approx(6.004).epsilon(1e-4));

    const auto tiny = operating_pressures(0.1e6, params);
    CHECK(tiny.p_max_Pa == doctest::Approx(0.08e6));
    CHECK(tiny.p_min_Pa == doctest::Approx(0.024e6));

    const auto doubled = operating_pressures(2 * 25.0155e6, params);
    CHECK(doubled.p_max_Pa == doctest::Approx(2 * b.p_max_Pa));
    CHECK(doubled.p_min_Pa == doctest::Approx(2 * b.p_min_Pa));
}

TEST_CASE("compressibility table interpolates and refuses extrapolation") {
    const auto table = CompressibilityTable::load_csv(repo_data("h2_compressibility_z.csv"));

    SUBCASE("ideal-gas limit at the lowest tabulated pressure") {
        for (double t = 270.0; t <= 370.0; t += 10.0)
            CHECK(std::abs(table.z(0.1e6, t) - 1.0) < 0.005);
    }
    SUBCASE("exact at table nodes") {
        const auto oracle = OracleZTable::load(repo_data("h2_compressibility_z.csv"));
        CHECK(table.z(10.0e6, 310.0) == oracle.z[20][8]);  // p row 10.0 MPa, T col 310 K
        CHECK(table.z(0.1e6, 270.0) == oracle.z[0][0]);
        CHECK(table.z(60.0e6, 370.0) == oracle.z.back().back());
    }
    SUBCASE("matches an independent bilinear evaluation between nodes") {
        const auto oracle = OracleZTable::load(repo_data("h2_compressibility_z.csv"));
        for (const auto& [p, t] : {std::pair{3.21e6, 283.4}, {17.77e6, 311.9}, {42.17e6, 344.4}})
            CHECK(table.z(p, t) == doctest::Approx(oracle.lookup(p / 1e6, t)).epsilon(1e-12));
    }
    SUBCASE("anchors from published hydrogen property data") {
        CHECK(table.z(20e6, 310.0) == doctest::Approx(1.12).epsilon(0.02));
        CHECK(table.z(20e6, 300.0) == doctest::Approx(1.122).epsilon(0.005));
        CHECK(table.z(50e6, 300.0) == doctest::Approx(1.315).epsilon(0.012));
        // low-pressure slope equals the second virial coefficient B(T)
        const double r_gas = 8.314;
        const double b_300 = (table.z(1e6, 300.0) - 1.0) * r_gas * 300.0 / 1e6;
        CHECK(b_300 == doctest::Approx(14.8e-6).epsilon(0.12));
        const double b_273 = (table.z(1e6, 273.15) - 1.0) * r_gas * 273.15 / 1e6;
        CHECK(b_273 == doctest::Approx(13.7e-6).epsilon(0.12));
    }
    SUBCASE("out-of-hull queries raise RangeError") {
        CHECK_THROWS_AS(table.z(0.05e6, 300.0), RangeError);
        CHECK_THROWS_AS(table.z(61e6, 300.0), RangeError);
        CHECK_THROWS_AS(table.z(10e6, 269.0), RangeError);
        CHECK_THROWS_AS(table.z(10e6, 371.0), RangeError);
    }
    SUBCASE("corrupt tables are rejected") {
        CHECK_THROWS_AS(CompressibilityTable::from_grid({1e6, 2e6}, {300.0, 310.0},
                                                        {1.0, 1.0, -0.5, 1.0}),
                        ValidationError);
        CHECK_THROWS_AS(CompressibilityTable::from_grid({1e6, 2e6}, {300.0, 310.0},
                                                        {1.4, 1.5, 1.5, 1.6}),
                        ValidationError);  // nowhere near Z=1 at low pressure
    }
}

TEST_CASE("cavern capacity matches the independent scalar computation") {
    const ThermoParams params;
    const auto table = CompressibilityTable::load_csv(repo_data("h2_compressibility_z.csv"));
    const auto oracle = OracleZTable::load(repo_data("h2_compressibility_z.csv"));

    const double impl = cavern_capacity_GWh(domal_at(1000.0), params, table);
    const double expected = oracle_capacity_GWh(1000.0, 300.0, 750000.0, 0.0, oracle);
    CHECK(impl == doctest::Approx(expected).epsilon(1e-9));
    CHECK(impl == doctest::Approx(227.817).epsilon(1e-4));  // order 1e2 GWh

    SUBCASE("zero when fully insoluble") {
        CHECK(cavern_capacity_GWh(domal_at(1000.0, 1.0), params, table) == 0.0);
    }
    SUBCASE("linear in (1 - phi)") {
        const double full = cavern_capacity_GWh(domal_at(1200.0, 0.0), params, table);
        const double quarter = cavern_capacity_GWh(domal_at(1200.0, 0.25), params, table);
        CHECK(full / quarter == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("linear in volume") {
        CavernPlacement p = domal_at(1200.0);
        const double base = cavern_capacity_GWh(p, params, table);
        p.spec.volume_m3 *= 2.0;
        CHECK(cavern_capacity_GWh(p, params, table) == doctest::Approx(2.0 * base).epsilon(1e-12));
    }
}

TEST_CASE("capacity grows strictly with cavern top depth") {
    const ThermoParams params;
    const auto table = CompressibilityTable::load_csv(repo_data("h2_compressibility_z.csv"));
    double previous = 0.0;
    for (double top = 500.0; top <= 1700.0 + 1e-9; top += 10.0) {
        const double cap = cavern_capacity_GWh(domal_at(top), params, table);
        CHECK(cap > previous);
        previous = cap;
    }
}

TEST_CASE("the pressure bracket is positive for all valid depths") {
    const ThermoParams params;
    const auto table = CompressibilityTable::load_csv(repo_data("h2_compressibility_z.csv"));
    for (double top = 500.0; top <= 1700.0 + 1e-9; top += 50.0) {
        const double p_lith = lithostatic_pressure_Pa(top, params);
        const auto [p_min, p_max] = operating_pressures(p_lith, params);
        const double temp = cavern_temperature_K(top, 300.0, params);
        const double rs_t = params.specific_gas_constant() * temp;
        CHECK(p_max / (table.z(p_max, temp) * rs_t) > p_min / (table.z(p_min, temp) * rs_t));
    }
}

TEST_CASE("pressure unit scaling is self-consistent") {
    const ThermoParams params;
    const auto table = CompressibilityTable::load_csv(repo_data("h2_compressibility_z.csv"));
    const double top = 1234.0;
    const double p_lith = lithostatic_pressure_Pa(top, params);
    const auto [p_min, p_max] = operating_pressures(p_lith, params);
    const double temp = cavern_temperature_K(top, 300.0, params);
    const double rs = params.specific_gas_constant();

    const double bracket_pa =
        p_max / (table.z(p_max, temp) * rs * temp) - p_min / (table.z(p_min, temp) * rs * temp);
    // same computation with pressures in MPa and R scaled accordingly
    const double rs_mpa = rs * 1e-6;
    const double bracket_mpa = (p_max / 1e6) / (table.z(p_max, temp) * rs_mpa * temp) -
                               (p_min / 1e6) / (table.z(p_min, temp) * rs_mpa * temp);
    CHECK(std::abs(bracket_pa - bracket_mpa) / bracket_pa < 1e-9);
}

TEST_CASE("aggregation sums per group and is exactly additive") {
    const auto spec = CavernSpec::for_salt_type(SaltType::domal, 4);
    const auto make = [&](const std::string& deposit, const std::string& iso3, double gwh) {
        CavernPlacement p;
        p.spec = spec;
        p.deposit_id = deposit;
        p.country_iso3 = iso3;
        p.capacity_GWh = gwh;
        return p;
    };

    SUBCASE("empty list gives an empty table") {
        CHECK(aggregate_capacity({}, Grouping::country).empty());
    }
    SUBCASE("published aggregate reproduced from synthetic placements") {
        // Australia holds the same capacity in both geological cases.
        std::vector<CavernPlacement> placements = {make("oz1", "AUS", 60000.0e3),
                                                   make("oz2", "AUS", 59677.0e3)};
        const auto rows = aggregate_capacity(placements, Grouping::country);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].key == "AUS");
        CHECK(rows[0].capacity_TWh == doctest::Approx(119677.0).epsilon(1e-12));
    }
    SUBCASE("global total equals the sum of group totals") {
        std::vector<CavernPlacement> placements = {make("a", "DEU", 1000.0),
                                                   make("b", "FRA", 2000.0)};
        const auto rows = aggregate_capacity(placements, Grouping::country);
        double total = 0.0;
        for (const auto& r : rows) total += r.capacity_TWh;
        CHECK(total == doctest::Approx(3.0));
    }
    SUBCASE("missing country buckets under unassigned with a warning") {
        std::vector<std::string> warnings;
        const auto rows =
            aggregate_capacity({make("a", "", 500.0)}, Grouping::country, nullptr, &warnings);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].key == "unassigned");
        CHECK(warnings.size() == 1);
    }
    SUBCASE("deposit grouping keys by deposit id") {
        const auto rows = aggregate_capacity({make("a", "DEU", 1000.0), make("a", "DEU", 500.0),
                                              make("b", "DEU", 200.0)},
                                             Grouping::deposit);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].key == "a");
        CHECK(rows[0].capacity_TWh == doctest::Approx(1.5));
        CHECK(rows[1].cavern_count == 1);
    }
    SUBCASE("totals are exactly permutation invariant") {
        std::mt19937 rng(73);
        std::uniform_real_distribution<double> gwh(0.1, 5000.0);
        std::vector<CavernPlacement> placements;
        for (int i = 0; i < 200; ++i) {
            CavernPlacement p = make("dep" + std::to_string(i % 7), i % 3 ? "DEU" : "FRA",
                                     gwh(rng));
            p.lattice_row = i / 7;
            p.lattice_col = i;
            placements.push_back(p);
        }
        const auto base = aggregate_capacity(placements, Grouping::country);
        for (int perm = 0; perm < 5; ++perm) {
            std::shuffle(placements.begin(), placements.end(), rng);
            const auto shuffled = aggregate_capacity(placements, Grouping::country);
            REQUIRE(shuffled.size() == base.size());
            for (std::size_t i = 0; i < base.size(); ++i) {
                CHECK(shuffled[i].key == base[i].key);
                CHECK(shuffled[i].capacity_TWh == base[i].capacity_TWh);  // bit-exact
            }
        }
    }
    SUBCASE("region grouping uses the region map") {
        RegionMap regions;
        regions.rows = {{"DEU", "Europe"}, {"FRA", "Europe"}};
        regions.regions = {"Europe"};
        const auto rows = aggregate_capacity({make("a", "DEU", 1000.0), make("b", "FRA", 500.0)},
                                             Grouping::region, &regions);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].key == "Europe");
        CHECK(rows[0].capacity_TWh == doctest::Approx(1.5));
        CHECK(rows[0].cavern_count == 2);
    }
}

TEST_CASE("salt mass rate from leached volume") {
    const ThermoParams params;
    CavernPlacement domal = domal_at(1000.0);

    CHECK(salt_mass_rate_Mt_per_a({domal}, 1.0, params) == doctest::Approx(1.6275).epsilon(1e-12));

    CavernPlacement inert = domal_at(1000.0, 1.0);
    CHECK(salt_mass_rate_Mt_per_a({inert}, 1.0, params) == 0.0);

    CHECK(salt_mass_rate_Mt_per_a({domal}, 25.0, params) ==
          doctest::Approx(1.6275 / 25.0).epsilon(1e-12));
    CHECK_THROWS_AS(salt_mass_rate_Mt_per_a({domal}, 0.0, params), ValidationError);
}

TEST_CASE("a multi-PWh buildout leaches salt at the published order of magnitude") {
    // Consistency, not equality: the exact figure depends on the depth mix.
    const ThermoParams params;
    const auto table = CompressibilityTable::load_csv(repo_data("h2_compressibility_z.csv"));
    CavernPlacement domal = domal_at(1000.0);
    domal.capacity_GWh = cavern_capacity_GWh(domal, params, table);

    const double target_GWh = 4942.0 * kGWhPerTWh;  // 4,942 TWh of buildout
    const auto count = static_cast<std::size_t>(target_GWh / domal.capacity_GWh);
    const std::vector<CavernPlacement> fleet(count, domal);

    const double rate = salt_mass_rate_Mt_per_a(fleet, 25.0, params);
    CHECK(rate > 1191.0 / 2.0);
    CHECK(rate < 1191.0 * 2.0);
}
