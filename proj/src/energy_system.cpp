#include "halite/energy_system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "halite/errors.hpp"

namespace halite {

std::string SufficiencyRatio::to_pct_string() const {
    switch (kind) {
        case Kind::unbounded: return "unbounded";
        case Kind::undefined: return "undefined";
        case Kind::value: break;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", ratio * 100.0);
    return buf;
}

const LedgerEntry* SufficiencyLedger::find(const std::string& key) const {
    for (const auto& e : entries)
        if (e.key == key) return &e;
    return nullptr;
}

double storage_need_TWh(double annual_demand_TWh, double fraction) {
    if (annual_demand_TWh < 0) throw ValidationError("annual demand must be >= 0");
    if (!(fraction > 0.0) || fraction > 1.0)
        throw ValidationError("storage fraction must be within (0, 1]");
    return fraction * annual_demand_TWh;
}

SufficiencyRatio sufficiency(double potential_TWh, double need_TWh) {
    if (potential_TWh < 0 || need_TWh < 0)
        throw ValidationError("potential and need must be >= 0");
    SufficiencyRatio r;
    if (need_TWh > 0) {
        r.kind = SufficiencyRatio::Kind::value;
        r.ratio = potential_TWh / need_TWh;
    } else if (potential_TWh > 0) {
        r.kind = SufficiencyRatio::Kind::unbounded;
    } else {
        r.kind = SufficiencyRatio::Kind::undefined;
    }
    return r;
}

SufficiencyLedger build_country_ledger(const std::vector<CapacityRow>& potentials,
                                       const DemandTable& demand, double storage_fraction,
                                       const RegionMap* regions,
                                       std::vector<std::string>* warnings) {
    std::map<std::string, LedgerEntry> entries;

    // The entity universe comes from the demand table.
    for (const auto& [iso3, annual_demand] : demand.rows) {
        LedgerEntry e;
        e.key = iso3;
        e.demand_TWh = annual_demand;
        e.need_TWh = storage_need_TWh(annual_demand, storage_fraction);
        entries[iso3] = std::move(e);
    }
    for (const auto& row : potentials) {
        auto it = entries.find(row.key);
        if (it == entries.end()) {
            LedgerEntry e;
            e.key = row.key;
            e.potential_TWh = row.capacity_TWh;
            entries[row.key] = std::move(e);
            if (warnings)
                warnings->push_back("country " + row.key +
                                    " holds potential but has no demand row");
        } else {
            it->second.potential_TWh = row.capacity_TWh;
        }
    }

    SufficiencyLedger ledger;
    for (auto& [key, e] : entries) {
        e.sufficiency = sufficiency(e.potential_TWh, e.need_TWh);
        if (regions) {
            const std::string* r = regions->region_of(key);
            e.region = r ? *r : "";
        }
        ledger.entries.push_back(std::move(e));
    }
    return ledger;
}

namespace {

std::string region_key(const LedgerEntry& country) {
    return country.region.empty() ? "unassigned" : country.region;
}

}  // namespace

SufficiencyLedger regional_sufficiency(SufficiencyLedger& countries, const RegionMap& regions,
                                       std::vector<std::string>* warnings) {
    std::map<std::string, LedgerEntry> buckets;
    for (const auto& name : regions.regions) {
        LedgerEntry e;
        e.key = name;
        buckets[name] = std::move(e);
    }
    for (auto& country : countries.entries) {
        if (country.region.empty() && warnings)
            warnings->push_back("country " + country.key +
                                " has no region assignment; grouped as unassigned");
        auto& bucket = buckets[region_key(country)];
        bucket.key = region_key(country);
        bucket.potential_TWh += country.potential_TWh;
        bucket.need_TWh += country.need_TWh;
        bucket.demand_TWh += country.demand_TWh;
    }

    SufficiencyLedger out;
    for (auto& [name, bucket] : buckets) {
        bucket.sufficiency = sufficiency(bucket.potential_TWh, bucket.need_TWh);
        bucket.region_sufficient = bucket.sufficiency.sufficient();
        out.entries.push_back(std::move(bucket));
    }
    for (auto& country : countries.entries) {
        const LedgerEntry* bucket = out.find(region_key(country));
        country.region_sufficient = bucket && bucket->sufficiency.sufficient();
    }
    return out;
}

SharingPlan storage_abroad(const SufficiencyLedger& countries, const RegionMap& regions) {
    std::map<std::string, std::vector<const LedgerEntry*>> members;
    for (const auto& c : countries.entries) members[region_key(c)].push_back(&c);
    (void)regions;  // membership already resolved onto the ledger entries

    SharingPlan plan;
    for (const auto& [region, list] : members) {
        RegionSharing sharing;
        sharing.region = region;

        std::vector<std::pair<double, const LedgerEntry*>> deficits;  // need - potential
        std::vector<std::pair<double, const LedgerEntry*>> surpluses;
        for (const LedgerEntry* c : list) {
            sharing.total_potential_TWh += c->potential_TWh;
            sharing.total_need_TWh += c->need_TWh;
            const double balance = c->potential_TWh - c->need_TWh;
            if (balance < 0) deficits.emplace_back(-balance, c);
            else if (balance > 0) surpluses.emplace_back(balance, c);
        }
        // Largest first; ties broken by country code for determinism.
        const auto desc = [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second->key < b.second->key;
        };
        std::sort(deficits.begin(), deficits.end(), desc);
        std::sort(surpluses.begin(), surpluses.end(), desc);

        double remaining_surplus = 0;
        for (const auto& [surplus, c] : surpluses) remaining_surplus += surplus;

        std::size_t donor_idx = 0;
        double donor_left = surpluses.empty() ? 0.0 : surpluses[0].first;
        for (const auto& [deficit, c] : deficits) {
            if (remaining_surplus <= 0) break;
            double flow = std::min(deficit, remaining_surplus);
            sharing.storage_abroad_TWh += flow;
            remaining_surplus -= flow;
            sharing.recipients.push_back(c->key);
            while (flow > 0 && donor_idx < surpluses.size()) {
                const double take = std::min(flow, donor_left);
                if (take > 0 && (sharing.donors.empty() ||
                                 sharing.donors.back() != surpluses[donor_idx].second->key))
                    sharing.donors.push_back(surpluses[donor_idx].second->key);
                flow -= take;
                donor_left -= take;
                if (donor_left <= 0 && donor_idx + 1 < surpluses.size())
                    donor_left = surpluses[++donor_idx].first;
                else if (donor_left <= 0)
                    ++donor_idx;
            }
        }
        plan.regions.push_back(std::move(sharing));
    }
    std::sort(plan.regions.begin(), plan.regions.end(),
              [](const RegionSharing& a, const RegionSharing& b) { return a.region < b.region; });
    return plan;
}

namespace {

// Region mode keeps self-sufficient countries counted: a country never loses
// access to its own caverns by interconnecting with neighbors.
bool counts_as_sufficient(const LedgerEntry& c, ShareMode mode) {
    if (mode == ShareMode::country) return c.self_sufficient();
    return c.self_sufficient() || c.region_sufficient;
}

}  // namespace

double balanced_demand_share_pct(const SufficiencyLedger& countries, ShareMode mode) {
    double total = 0.0, balanced = 0.0;
    for (const auto& c : countries.entries) {
        total += c.demand_TWh;
        if (counts_as_sufficient(c, mode)) balanced += c.demand_TWh;
    }
    if (total <= 0) throw ValidationError("global demand must be positive");
    return balanced / total * 100.0;
}

std::pair<int, int> sufficient_country_count(const SufficiencyLedger& countries, ShareMode mode) {
    int count = 0, total = 0;
    for (const auto& c : countries.entries) {
        // Zero-demand zero-potential entries stay out of the denominator.
        if (c.sufficiency.kind == SufficiencyRatio::Kind::undefined) continue;
        ++total;
        if (counts_as_sufficient(c, mode)) ++count;
    }
    return {count, total};
}

double transport_increment_pct(double shared_TWh, double baseline_trade_TWh) {
    if (shared_TWh < 0) throw ValidationError("shared volume must be >= 0");
    if (!(baseline_trade_TWh > 0)) throw ValidationError("baseline trade volume must be positive");
    // One full storage cycle per year: the shared capacity moves at least
    // once annually.
    return shared_TWh / baseline_trade_TWh * 100.0;
}

double expansion_rate_TWh_per_a(double total_built_TWh, double years) {
    if (!(years > 0)) throw ValidationError("years must be positive");
    if (total_built_TWh < 0) throw ValidationError("built capacity must be >= 0");
    return total_built_TWh / years;
}

}  // namespace halite
