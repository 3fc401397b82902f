#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halite/eligibility.hpp"
#include "halite/geodata.hpp"

namespace halite {

// Cavern geometry per salt structure, with center-to-center separation as a
// multiple of the diameter.
struct CavernSpec {
    SaltType shape = SaltType::domal;
    double height_m = 300.0;
    double diameter_m = 58.0;
    double volume_m3 = 750000.0;
    int separation_factor = 4;  // 3, 4 or 5

    double pitch_m() const { return separation_factor * diameter_m; }

    static CavernSpec for_salt_type(SaltType type, int separation_factor);
    void validate() const;
};

struct CavernPlacement {
    std::string deposit_id;
    std::string country_iso3;
    double lon = 0.0;
    double lat = 0.0;
    int lattice_row = 0;  // lattice node indices, for deterministic ordering
    int lattice_col = 0;
    double cavern_top_depth_m = 0.0;
    CavernSpec spec;
    double insoluble_fraction = 0.0;
    double capacity_GWh = 0.0;  // filled by the capacity pass
};

// Square-lattice packing: nodes spaced pitch_m apart in local metric
// coordinates, anchored on the first cell center; a node is kept iff the
// cell containing it is eligible. Output is sorted by (lattice row, col).
std::vector<CavernPlacement> pack_caverns(const EligibilityRaster& raster,
                                          const CavernSpec& spec);

struct DepthAssignment {
    bool feasible = false;
    double top_depth_m = 0.0;
    std::string reason;  // set when infeasible
};

// Deepest admissible cavern top inside the suitable window: capacity grows
// with depth, so the upper-bound potential uses the deepest valid top.
DepthAssignment assign_depth(const CavernSpec& spec, const DepthInterval& window,
                             const std::optional<DepthInterval>& deposit_interval);

}  // namespace halite
