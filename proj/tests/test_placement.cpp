#include <doctest.h>

#include <cmath>
#include <random>

#include "halite/errors.hpp"
#include "halite/placement.hpp"
#include "test_support.hpp"

using namespace halite;
using namespace halite::testing;

namespace {

EligibilityRaster raster_from_mask(const Mask& eligible, double cell_m = 100.0) {
    EligibilityRaster raster;
    raster.grid.proj = LocalProjection::anchored_at({0.0, 0.0});
    raster.grid.cell_size_m = cell_m;
    raster.grid.origin_x_m = 0.0;
    raster.grid.origin_y_m = 0.0;
    raster.grid.width = eligible.width;
    raster.grid.height = eligible.height;
    raster.eligible = eligible;
    raster.deposit_mask = eligible;
    return raster;
}

double min_pairwise_distance_m(const std::vector<CavernPlacement>& placements,
                               const LocalProjection& proj) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < placements.size(); ++i) {
        const XY a = proj.to_local({placements[i].lon, placements[i].lat});
        for (std::size_t j = i + 1; j < placements.size(); ++j) {
            const XY b = proj.to_local({placements[j].lon, placements[j].lat});
            best = std::min(best, std::hypot(a.x - b.x, a.y - b.y));
        }
    }
    return best;
}

}  // namespace

TEST_CASE("cavern specs carry the published geometries") {
    const auto domal = CavernSpec::for_salt_type(SaltType::domal, 4);
    CHECK(domal.height_m == 300.0);
    CHECK(domal.diameter_m == 58.0);
    CHECK(domal.volume_m3 == 750000.0);
    CHECK(domal.pitch_m() == 232.0);

    const auto bedded = CavernSpec::for_salt_type(SaltType::bedded, 4);
    CHECK(bedded.height_m == 120.0);
    CHECK(bedded.diameter_m == 84.0);
    CHECK(bedded.volume_m3 == 500000.0);
    CHECK(bedded.pitch_m() == 336.0);

    CHECK_THROWS_AS(CavernSpec::for_salt_type(SaltType::domal, 6), ValidationError);
    CHECK_THROWS_AS(CavernSpec::for_salt_type(SaltType::domal, 2), ValidationError);
}

TEST_CASE("packing a fully eligible square kilometre") {
    const auto raster = raster_from_mask(Mask(10, 10, true));

    SUBCASE("domal, factor 4: 5 x 5 lattice") {
        const auto placements =
            pack_caverns(raster, CavernSpec::for_salt_type(SaltType::domal, 4));
        CHECK(placements.size() == 25);
        CHECK(min_pairwise_distance_m(placements, raster.grid.proj) ==
              doctest::Approx(232.0).epsilon(1e-9));
    }
    SUBCASE("domal, factor 5: 4 x 4 lattice") {
        const auto placements =
            pack_caverns(raster, CavernSpec::for_salt_type(SaltType::domal, 5));
        CHECK(placements.size() == 16);
    }
    SUBCASE("bedded, factor 4: 3 x 3 lattice") {
        const auto placements =
            pack_caverns(raster, CavernSpec::for_salt_type(SaltType::bedded, 4));
        CHECK(placements.size() == 9);
    }
    SUBCASE("empty mask packs nothing") {
        CHECK(pack_caverns(raster_from_mask(Mask(10, 10)),
                           CavernSpec::for_salt_type(SaltType::domal, 4))
                  .empty());
    }
}

TEST_CASE("packing matches the lattice oracle and stays within eligible cells") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Mask mask = random_blob_mask(rng, 60, 60, 100.0);
        const auto raster = raster_from_mask(mask);
        const auto spec = CavernSpec::for_salt_type(trial % 2 ? SaltType::bedded
                                                              : SaltType::domal, 4);
        const auto placements = pack_caverns(raster, spec);

        CHECK(placements.size() == oracle_lattice_count(mask, 100.0, spec.pitch_m()));
        for (const auto& p : placements) {
            int row = -1, col = -1;
            REQUIRE(raster.grid.index_of({p.lon, p.lat}, row, col));
            CHECK(mask.get(row, col));
        }
    }
}

TEST_CASE("separation monotonicity and density bound on random masks") {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const Mask mask = random_blob_mask(rng, 60, 60, 100.0);
        const auto raster = raster_from_mask(mask);
        const SaltType type = trial % 2 ? SaltType::bedded : SaltType::domal;

        const auto n3 = pack_caverns(raster, CavernSpec::for_salt_type(type, 3)).size();
        const auto n4 = pack_caverns(raster, CavernSpec::for_salt_type(type, 4)).size();
        const auto n5 = pack_caverns(raster, CavernSpec::for_salt_type(type, 5)).size();
        CHECK(n3 >= n4);
        CHECK(n4 >= n5);

        const double pitch = CavernSpec::for_salt_type(type, 4).pitch_m();
        const double area_m2 = static_cast<double>(mask.count()) * 100.0 * 100.0;
        const double bound = area_m2 / (pitch * pitch) + 60.0 * 100.0 / pitch * 2.0 + 1.0;
        CHECK(static_cast<double>(n4) <= bound);
    }
}

TEST_CASE("packing is deterministic and ordered by lattice indices") {
    std::mt19937 rng(3);
    const Mask mask = random_blob_mask(rng, 40, 40, 100.0);
    const auto raster = raster_from_mask(mask);
    const auto spec = CavernSpec::for_salt_type(SaltType::domal, 4);

    const auto a = pack_caverns(raster, spec);
    const auto b = pack_caverns(raster, spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].lon == b[i].lon);
        CHECK(a[i].lat == b[i].lat);
        if (i > 0)
            CHECK((a[i].lattice_row > a[i - 1].lattice_row ||
                   (a[i].lattice_row == a[i - 1].lattice_row &&
                    a[i].lattice_col > a[i - 1].lattice_col)));
    }
}

TEST_CASE("depth assignment picks the deepest admissible cavern top") {
    const auto domal = CavernSpec::for_salt_type(SaltType::domal, 4);
    const auto bedded = CavernSpec::for_salt_type(SaltType::bedded, 4);

    const auto full = assign_depth(domal, {500.0, 2000.0}, DepthInterval{500.0, 2000.0});
    CHECK(full.feasible);
    CHECK(full.top_depth_m == 1700.0);

    const auto thin = assign_depth(domal, {500.0, 650.0}, DepthInterval{500.0, 650.0});
    CHECK_FALSE(thin.feasible);
    CHECK_FALSE(thin.reason.empty());

    const auto shallow = assign_depth(bedded, {500.0, 900.0}, DepthInterval{500.0, 900.0});
    CHECK(shallow.feasible);
    CHECK(shallow.top_depth_m == 780.0);

    // exactly fitting window
    const auto exact = assign_depth(bedded, {500.0, 620.0}, DepthInterval{500.0, 620.0});
    CHECK(exact.feasible);
    CHECK(exact.top_depth_m == 500.0);
}
