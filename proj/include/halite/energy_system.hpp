#pragma once

#include <string>
#include <utility>
#include <vector>

#include "halite/capacity.hpp"
#include "halite/geodata.hpp"

namespace halite {

// potential / need, with sentinels for zero need: a positive potential over
// zero need is unbounded (counts as sufficient), zero over zero is undefined
// (excluded from count denominators).
struct SufficiencyRatio {
    enum class Kind { value, unbounded, undefined };
    Kind kind = Kind::undefined;
    double ratio = 0.0;  // valid when kind == value; 1.0 == 100%

    bool sufficient() const {
        return kind == Kind::unbounded || (kind == Kind::value && ratio >= 1.0);
    }
    // "unbounded" / "undefined", or the percentage with fixed precision.
    std::string to_pct_string() const;
};

struct LedgerEntry {
    std::string key;  // iso3 for countries, region name for regions
    std::string region;  // country entries only
    double potential_TWh = 0.0;
    double need_TWh = 0.0;
    double demand_TWh = 0.0;  // annual electricity demand behind the need
    SufficiencyRatio sufficiency;
    bool region_sufficient = false;  // filled after the regional pass

    bool self_sufficient() const { return sufficiency.sufficient(); }
    bool no_potential() const { return potential_TWh <= 0.0; }
};

struct SufficiencyLedger {
    std::vector<LedgerEntry> entries;  // sorted by key

    const LedgerEntry* find(const std::string& key) const;
};

// need = fraction * demand; fraction must be in (0, 1].
double storage_need_TWh(double annual_demand_TWh, double fraction);

SufficiencyRatio sufficiency(double potential_TWh, double need_TWh);

// Country ledger over the demand table's universe: every demand row appears;
// countries holding potential without a demand row are appended with zero
// need. Region names come from the region map when given.
SufficiencyLedger build_country_ledger(const std::vector<CapacityRow>& potentials,
                                       const DemandTable& demand, double storage_fraction,
                                       const RegionMap* regions = nullptr,
                                       std::vector<std::string>* warnings = nullptr);

// Region ledger: potentials and needs summed per region, sufficiency computed
// on the sums. Countries without a region assignment group under
// "unassigned" (warned). Also back-fills region_sufficient on the countries.
SufficiencyLedger regional_sufficiency(SufficiencyLedger& countries, const RegionMap& regions,
                                       std::vector<std::string>* warnings = nullptr);

struct RegionSharing {
    std::string region;
    double total_potential_TWh = 0.0;
    double total_need_TWh = 0.0;
    // Deficit volume covered by in-region surplus countries; bounded by the
    // regional surplus, zero when every member is self-sufficient.
    double storage_abroad_TWh = 0.0;
    std::vector<std::string> donors;
    std::vector<std::string> recipients;
};

struct SharingPlan {
    std::vector<RegionSharing> regions;  // sorted by region name
};

// Greedy in-region allocation, largest deficit first; donors drained in
// descending surplus order. Aggregate flows are allocation-order invariant.
SharingPlan storage_abroad(const SufficiencyLedger& countries, const RegionMap& regions);

enum class ShareMode { country, region };

// Share of global electricity demand in entities that can cover their
// storage need: demand-weighted over countries; in region mode a country
// counts when its region is sufficient.
double balanced_demand_share_pct(const SufficiencyLedger& countries, ShareMode mode);

// (sufficient, total) over countries; 0-demand 0-potential entries are
// excluded from both.
std::pair<int, int> sufficient_country_count(const SufficiencyLedger& countries, ShareMode mode);

// Extra transport caused by shared storage, assuming one full storage cycle
// per year, as a percentage of the baseline trade volume.
double transport_increment_pct(double shared_TWh, double baseline_trade_TWh);

double expansion_rate_TWh_per_a(double total_built_TWh, double years);

}  // namespace halite
