#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "halite/geometry.hpp"
#include "halite/grid.hpp"

namespace halite {

enum class SaltType { domal, bedded };

enum class SuitabilityHint { unknown, guaranteed, partial, unsuitable };

struct DepthInterval {
    double min_m = 0.0;  // meters below surface
    double max_m = 0.0;

    double span() const { return max_m - min_m; }
};

struct SaltDeposit {
    std::string id;
    std::string name;
    MultiPolygon geometry;  // WGS84 lon/lat
    SaltType salt_type = SaltType::domal;
    // Depth of the deposit top over its extent. Absent when the deposit is
    // geologically unexplored; such deposits load with hint = unknown.
    std::optional<DepthInterval> depth_top_m;
    std::optional<double> thickness_m;         // null in the source = unknown
    std::optional<double> insoluble_fraction;  // φ, share of non-salt minerals
    double area_km2 = 0.0;
    SuitabilityHint suitability_hint = SuitabilityHint::unknown;
    std::string country_iso3;
};

enum class ExclusionCategory {
    settlement,
    infrastructure,
    seismic_fault,
    airport,
    protected_area,
    forest,
    water_stress,
    other,
};

const char* to_string(ExclusionCategory c);
const char* to_string(SaltType t);
const char* to_string(SuitabilityHint h);

struct ExclusionLayer {
    ExclusionCategory category = ExclusionCategory::other;
    std::string geometry_path;  // resolved against the manifest's directory
    double buffer_m = 0.0;
    // Layers that still exclude under horizontal drilling (ground subsidence
    // happens regardless of the well trajectory).
    bool applies_in_horizontal_mode = false;
    GeometrySet geometry;  // filled by load_layer_geometry
};

struct DemandTable {
    // (country_iso3, annual electricity demand in TWh/a); codes unique.
    std::vector<std::pair<std::string, double>> rows;

    const double* find(const std::string& iso3) const;
};

struct RegionMap {
    // (country_iso3, region_name); every country at most once.
    std::vector<std::pair<std::string, std::string>> rows;
    std::vector<std::string> regions;  // distinct names, sorted

    const std::string* region_of(const std::string& iso3) const;
};

// Non-fatal findings collected while loading (rejected features, deposits
// flagged for missing depth data, ...).
struct LoadIssue {
    std::string where;  // feature id or file:line style address
    std::string message;
    bool rejected = false;
};

// Parse a GeoJSON FeatureCollection of salt deposits.
// With issues == nullptr the first invalid feature throws; otherwise invalid
// features are rejected into the issue list and parsing continues.
std::vector<SaltDeposit> load_deposits(const std::string& path,
                                       std::vector<LoadIssue>* issues = nullptr);

nlohmann::json serialize_deposits(const std::vector<SaltDeposit>& deposits);

// Parse the exclusion manifest and apply per-category buffer defaults:
// settlement 2000 m, seismic_fault 200 m, airport 20000 m, others 0 m.
std::vector<ExclusionLayer> load_exclusion_manifest(const std::string& path);

void load_layer_geometry(ExclusionLayer& layer);

DemandTable load_demand(const std::string& path);
RegionMap load_regions(const std::string& path);

// Metric grid covering the deposit bounding box expanded by margin_m, cell
// edges snapped to cell_size multiples of the local projected coordinates.
// Deposits wider than 2000 km in either axis are refused (projection
// distortion bound; split the deposit instead).
LocalGrid build_local_grid(const SaltDeposit& deposit, double cell_size_m, double margin_m);

}  // namespace halite
