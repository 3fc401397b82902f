#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "halite/capacity.hpp"
#include "halite/eligibility.hpp"
#include "halite/geology.hpp"

namespace halite {

struct ScenarioConfig {
    GeologyCase geology_case = GeologyCase::guaranteed_only;
    int separation_factor = 4;                            // 3, 4 or 5
    DrillingMode::Kind drilling = DrillingMode::Kind::vertical;
    double horizontal_reach_m = 5000.0;
    double resolution_m = 100.0;
    double storage_fraction = 0.10;  // of annual electricity demand

    std::string deposits_path;
    std::string exclusion_manifest_path;
    std::string demand_path;
    std::string regions_path;
    std::string z_table_path;

    SuitabilityCriteria criteria;
    ThermoParams thermo;

    double build_horizon_years = 25.0;
    // Annual trade volume the transport increment is measured against;
    // <= 0 skips that side computation.
    double baseline_trade_TWh = 0.0;

    std::string output_dir = "out";
    int workers = 1;
    bool export_masks = false;

    static ScenarioConfig from_json(const nlohmann::json& j);
    static ScenarioConfig from_file(const std::string& path);
    nlohmann::json to_json() const;
    void validate() const;
};

struct RunArtifacts {
    std::filesystem::path output_dir;
    std::filesystem::path placements_geojson;
    std::filesystem::path countries_csv;
    std::filesystem::path regions_csv;
    std::filesystem::path summary_json;
    std::filesystem::path metadata_json;
};

// Full pipeline: load -> classify -> rasterize -> pack -> capacity -> ledger,
// then write all artifacts. Deterministic: identical config and inputs give
// byte-identical outputs for any worker count.
RunArtifacts run_scenario(const ScenarioConfig& config, std::ostream* log = nullptr);

// Per-country and global percentage changes in capacity and sufficiency
// between two finished runs. Refuses runs with differing input datasets.
nlohmann::json diff_scenarios(const std::filesystem::path& run_a,
                              const std::filesystem::path& run_b);

inline constexpr const char* kVersion = "0.1.0";

}  // namespace halite
