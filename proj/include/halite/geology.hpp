#pragma once

#include <vector>

#include "halite/geodata.hpp"

namespace halite {

// Geological screening thresholds. The depth window is inclusive at both
// bounds; thickness, insolubles and area are strict inequalities.
struct SuitabilityCriteria {
    DepthInterval depth_window_m{500.0, 2000.0};
    double min_thickness_m = 200.0;
    double max_insoluble_fraction = 0.25;
    double min_area_km2 = 15.0;

    void validate() const;
};

enum class GeologyCase { guaranteed_only, guaranteed_and_partial };

enum class Suitability { guaranteed, partial, unsuitable };

const char* to_string(Suitability s);
const char* to_string(GeologyCase c);

// guaranteed: every criterion certainly met over the whole depth interval.
// unsuitable: some criterion certainly violated over the whole deposit.
// partial: everything else (straddling depth window, unknown attributes).
Suitability classify_deposit(const SaltDeposit& d, const SuitabilityCriteria& c);

// Deposit set for a scenario case. In the guaranteed_and_partial case,
// partial deposits are returned with their depth interval clipped to the
// suitable sub-interval where one is determinable; deposits with unknown
// depth keep the full criteria window as an explicit upper bound.
std::vector<SaltDeposit> select_case(const std::vector<SaltDeposit>& deposits,
                                     GeologyCase geology_case,
                                     const SuitabilityCriteria& criteria);

// Depth window caverns may occupy in this deposit: the deposit interval
// intersected with the criteria window, or the full window when the deposit
// depth is unknown.
DepthInterval effective_depth_window(const SaltDeposit& d, const SuitabilityCriteria& c);

}  // namespace halite
