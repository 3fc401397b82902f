#include "halite/geology.hpp"

#include <algorithm>

#include "halite/errors.hpp"

namespace halite {

void SuitabilityCriteria::validate() const {
    if (!(depth_window_m.min_m < depth_window_m.max_m))
        throw ValidationError("criteria: depth window min must be below max");
    if (depth_window_m.min_m <= 0) throw ValidationError("criteria: depth window must be positive");
    if (min_thickness_m <= 0) throw ValidationError("criteria: min_thickness_m must be positive");
    if (max_insoluble_fraction <= 0 || max_insoluble_fraction >= 1)
        throw ValidationError("criteria: max_insoluble_fraction must be within (0, 1)");
    if (min_area_km2 <= 0) throw ValidationError("criteria: min_area_km2 must be positive");
}

const char* to_string(Suitability s) {
    switch (s) {
        case Suitability::guaranteed: return "guaranteed";
        case Suitability::partial: return "partial";
        case Suitability::unsuitable: return "unsuitable";
    }
    return "unsuitable";
}

const char* to_string(GeologyCase c) {
    return c == GeologyCase::guaranteed_only ? "guaranteed_only" : "guaranteed_and_partial";
}

namespace {

// Three-valued criterion check: met over the whole deposit, violated over
// the whole deposit, or undecidable (unknown attribute / straddling window).
enum class Check { met, violated, uncertain };

Check depth_check(const std::optional<DepthInterval>& depth, const DepthInterval& window) {
    if (!depth) return Check::uncertain;
    // Window bounds are inclusive.
    if (depth->min_m >= window.min_m && depth->max_m <= window.max_m) return Check::met;
    if (depth->max_m < window.min_m || depth->min_m > window.max_m) return Check::violated;
    return Check::uncertain;  // straddles a window bound
}

Check above_check(const std::optional<double>& value, double min_exclusive) {
    if (!value) return Check::uncertain;
    return *value > min_exclusive ? Check::met : Check::violated;
}

Check below_check(const std::optional<double>& value, double max_exclusive) {
    if (!value) return Check::uncertain;
    return *value < max_exclusive ? Check::met : Check::violated;
}

}  // namespace

Suitability classify_deposit(const SaltDeposit& d, const SuitabilityCriteria& c) {
    if (d.suitability_hint == SuitabilityHint::unsuitable) return Suitability::unsuitable;

    const Check checks[] = {
        depth_check(d.depth_top_m, c.depth_window_m),
        above_check(d.thickness_m, c.min_thickness_m),
        below_check(d.insoluble_fraction, c.max_insoluble_fraction),
        above_check(std::optional<double>(d.area_km2), c.min_area_km2),
    };
    bool all_met = true;
    for (const Check check : checks) {
        if (check == Check::violated) return Suitability::unsuitable;
        if (check != Check::met) all_met = false;
    }
    if (all_met && d.suitability_hint == SuitabilityHint::partial) return Suitability::partial;
    return all_met ? Suitability::guaranteed : Suitability::partial;
}

DepthInterval effective_depth_window(const SaltDeposit& d, const SuitabilityCriteria& c) {
    if (!d.depth_top_m) return c.depth_window_m;  // unexplored: full window, upper bound
    DepthInterval w{std::max(d.depth_top_m->min_m, c.depth_window_m.min_m),
                    std::min(d.depth_top_m->max_m, c.depth_window_m.max_m)};
    if (w.min_m > w.max_m) return c.depth_window_m;  // no overlap (only partial deposits get here)
    return w;
}

std::vector<SaltDeposit> select_case(const std::vector<SaltDeposit>& deposits,
                                     GeologyCase geology_case,
                                     const SuitabilityCriteria& criteria) {
    std::vector<SaltDeposit> selected;
    for (const auto& d : deposits) {
        const Suitability s = classify_deposit(d, criteria);
        if (s == Suitability::unsuitable) continue;
        if (s == Suitability::partial) {
            if (geology_case == GeologyCase::guaranteed_only) continue;
            SaltDeposit clipped = d;
            clipped.depth_top_m = effective_depth_window(d, criteria);
            clipped.suitability_hint = SuitabilityHint::partial;
            selected.push_back(std::move(clipped));
        } else {
            selected.push_back(d);
        }
    }
    return selected;
}

}  // namespace halite
