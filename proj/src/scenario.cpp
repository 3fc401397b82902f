#include "halite/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "halite/csv.hpp"
#include "halite/energy_system.hpp"
#include "halite/errors.hpp"
#include "halite/placement.hpp"
#include "halite/sha256.hpp"

namespace halite {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

GeologyCase parse_case(const std::string& s) {
    if (s == "guaranteed_only") return GeologyCase::guaranteed_only;
    if (s == "guaranteed_and_partial") return GeologyCase::guaranteed_and_partial;
    throw ValidationError("geology_case must be guaranteed_only or guaranteed_and_partial, got \"" +
                          s + "\"");
}

DrillingMode::Kind parse_drilling(const std::string& s) {
    if (s == "vertical") return DrillingMode::Kind::vertical;
    if (s == "horizontal") return DrillingMode::Kind::horizontal;
    throw ValidationError("drilling must be vertical or horizontal, got \"" + s + "\"");
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return key == k; }) == allowed.end())
            throw ValidationError(where + ": unknown key \"" + key + "\"");
    }
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    check_keys(j,
               {"geology_case", "separation_factor", "drilling", "horizontal_reach_m",
                "resolution_m", "storage_fraction", "inputs", "criteria", "thermo",
                "build_horizon_years", "baseline_trade_TWh", "output_dir", "workers",
                "export_masks"},
               "config");

    ScenarioConfig c;
    if (j.contains("geology_case")) c.geology_case = parse_case(j.at("geology_case"));
    if (j.contains("separation_factor")) c.separation_factor = j.at("separation_factor").get<int>();
    if (j.contains("drilling")) c.drilling = parse_drilling(j.at("drilling"));
    if (j.contains("horizontal_reach_m")) c.horizontal_reach_m = j.at("horizontal_reach_m").get<double>();
    if (j.contains("resolution_m")) c.resolution_m = j.at("resolution_m").get<double>();
    if (j.contains("storage_fraction")) c.storage_fraction = j.at("storage_fraction").get<double>();

    if (j.contains("inputs")) {
        const json& in = j.at("inputs");
        check_keys(in, {"deposits", "exclusion_manifest", "demand", "regions", "z_table"},
                   "config.inputs");
        c.deposits_path = in.value("deposits", "");
        c.exclusion_manifest_path = in.value("exclusion_manifest", "");
        c.demand_path = in.value("demand", "");
        c.regions_path = in.value("regions", "");
        c.z_table_path = in.value("z_table", "");
    }
    if (j.contains("criteria")) {
        const json& cr = j.at("criteria");
        check_keys(cr, {"depth_min_m", "depth_max_m", "min_thickness_m", "max_insoluble_fraction",
                        "min_area_km2"},
                   "config.criteria");
        c.criteria.depth_window_m.min_m = cr.value("depth_min_m", c.criteria.depth_window_m.min_m);
        c.criteria.depth_window_m.max_m = cr.value("depth_max_m", c.criteria.depth_window_m.max_m);
        c.criteria.min_thickness_m = cr.value("min_thickness_m", c.criteria.min_thickness_m);
        c.criteria.max_insoluble_fraction =
            cr.value("max_insoluble_fraction", c.criteria.max_insoluble_fraction);
        c.criteria.min_area_km2 = cr.value("min_area_km2", c.criteria.min_area_km2);
    }
    if (j.contains("thermo")) {
        const json& t = j.at("thermo");
        check_keys(t,
                   {"lower_heating_value_MJ_per_kg", "rock_density_kg_per_m3",
                    "surface_temperature_K", "geothermal_gradient_K_per_m", "p_max_factor",
                    "p_min_factor", "salt_density_kg_per_m3"},
                   "config.thermo");
        if (t.contains("lower_heating_value_MJ_per_kg"))
            c.thermo.lower_heating_value_J_per_kg =
                t.at("lower_heating_value_MJ_per_kg").get<double>() * 1e6;
        c.thermo.rock_density_kg_per_m3 =
            t.value("rock_density_kg_per_m3", c.thermo.rock_density_kg_per_m3);
        c.thermo.surface_temperature_K =
            t.value("surface_temperature_K", c.thermo.surface_temperature_K);
        c.thermo.geothermal_gradient_K_per_m =
            t.value("geothermal_gradient_K_per_m", c.thermo.geothermal_gradient_K_per_m);
        c.thermo.p_max_factor = t.value("p_max_factor", c.thermo.p_max_factor);
        c.thermo.p_min_factor = t.value("p_min_factor", c.thermo.p_min_factor);
        c.thermo.salt_density_kg_per_m3 =
            t.value("salt_density_kg_per_m3", c.thermo.salt_density_kg_per_m3);
    }
    c.build_horizon_years = j.value("build_horizon_years", c.build_horizon_years);
    c.baseline_trade_TWh = j.value("baseline_trade_TWh", c.baseline_trade_TWh);
    c.output_dir = j.value("output_dir", c.output_dir);
    c.workers = j.value("workers", c.workers);
    c.export_masks = j.value("export_masks", c.export_masks);
    return c;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
    ScenarioConfig c = from_json(j);
    // Input paths are relative to the config file's directory.
    const fs::path base = fs::path(path).parent_path();
    const auto resolve = [&](std::string& p) {
        if (!p.empty() && !fs::path(p).is_absolute()) p = (base / p).string();
    };
    resolve(c.deposits_path);
    resolve(c.exclusion_manifest_path);
    resolve(c.demand_path);
    resolve(c.regions_path);
    resolve(c.z_table_path);
    return c;
}

json ScenarioConfig::to_json() const {
    json j;
    j["geology_case"] = to_string(geology_case);
    j["separation_factor"] = separation_factor;
    j["drilling"] = to_string(drilling);
    j["horizontal_reach_m"] = horizontal_reach_m;
    j["resolution_m"] = resolution_m;
    j["storage_fraction"] = storage_fraction;
    j["inputs"] = {{"deposits", deposits_path},
                   {"exclusion_manifest", exclusion_manifest_path},
                   {"demand", demand_path},
                   {"regions", regions_path},
                   {"z_table", z_table_path}};
    j["criteria"] = {{"depth_min_m", criteria.depth_window_m.min_m},
                     {"depth_max_m", criteria.depth_window_m.max_m},
                     {"min_thickness_m", criteria.min_thickness_m},
                     {"max_insoluble_fraction", criteria.max_insoluble_fraction},
                     {"min_area_km2", criteria.min_area_km2}};
    j["thermo"] = {{"lower_heating_value_MJ_per_kg", thermo.lower_heating_value_J_per_kg / 1e6},
                   {"rock_density_kg_per_m3", thermo.rock_density_kg_per_m3},
                   {"surface_temperature_K", thermo.surface_temperature_K},
                   {"geothermal_gradient_K_per_m", thermo.geothermal_gradient_K_per_m},
                   {"p_max_factor", thermo.p_max_factor},
                   {"p_min_factor", thermo.p_min_factor},
                   {"salt_density_kg_per_m3", thermo.salt_density_kg_per_m3}};
    j["build_horizon_years"] = build_horizon_years;
    j["baseline_trade_TWh"] = baseline_trade_TWh;
    j["output_dir"] = output_dir;
    j["workers"] = workers;
    j["export_masks"] = export_masks;
    return j;
}

void ScenarioConfig::validate() const {
    if (separation_factor < 3 || separation_factor > 5)
        throw ValidationError("separation_factor must be 3, 4 or 5");
    if (!(resolution_m > 0)) throw ValidationError("resolution_m must be positive");
    if (!(storage_fraction > 0) || storage_fraction > 1.0)
        throw ValidationError("storage_fraction must be within (0, 1]");
    if (drilling == DrillingMode::Kind::horizontal && !(horizontal_reach_m > 0))
        throw ValidationError("horizontal_reach_m must be positive in horizontal mode");
    if (workers < 1) throw ValidationError("workers must be >= 1");
    if (!(build_horizon_years > 0)) throw ValidationError("build_horizon_years must be positive");
    if (deposits_path.empty() || exclusion_manifest_path.empty() || demand_path.empty() ||
        regions_path.empty() || z_table_path.empty())
        throw ValidationError(
            "inputs.deposits, inputs.exclusion_manifest, inputs.demand, inputs.regions and "
            "inputs.z_table are all required");
    for (const std::string* path : {&deposits_path, &exclusion_manifest_path, &demand_path,
                                    &regions_path, &z_table_path})
        if (!fs::exists(*path)) throw ValidationError("input file not found: " + *path);
    criteria.validate();
    thermo.validate();
}

namespace {

struct DepositOutcome {
    std::string deposit_id;
    double eligible_km2 = 0.0;
    std::vector<CavernPlacement> placements;
    std::vector<std::pair<ExclusionCategory, std::int64_t>> provenance;
    std::vector<std::string> notes;
};

struct PipelineContext {
    const ScenarioConfig* config;
    const std::vector<ExclusionLayer>* layers;
    const CompressibilityTable* table;
    double margin_m;
};

bool layer_touches_grid(const ExclusionLayer& layer, const LocalGrid& grid) {
    if (layer.geometry.empty()) return false;
    const BBox box = bounds(layer.geometry);
    const XY lo = grid.proj.to_local({box.min_lon, box.min_lat});
    const XY hi = grid.proj.to_local({box.max_lon, box.max_lat});
    const double pad = layer.buffer_m + grid.cell_size_m;
    const double gx0 = grid.origin_x_m, gx1 = grid.origin_x_m + grid.width * grid.cell_size_m;
    const double gy0 = grid.origin_y_m, gy1 = grid.origin_y_m + grid.height * grid.cell_size_m;
    return std::min(lo.x, hi.x) - pad <= gx1 && std::max(lo.x, hi.x) + pad >= gx0 &&
           std::min(lo.y, hi.y) - pad <= gy1 && std::max(lo.y, hi.y) + pad >= gy0;
}

DepositOutcome process_deposit(const SaltDeposit& deposit, const PipelineContext& ctx) {
    DepositOutcome out;
    out.deposit_id = deposit.id;
    const ScenarioConfig& cfg = *ctx.config;

    const DepthInterval window = effective_depth_window(deposit, cfg.criteria);
    const CavernSpec spec = CavernSpec::for_salt_type(deposit.salt_type, cfg.separation_factor);
    const DepthAssignment depth = assign_depth(spec, window, deposit.depth_top_m);
    if (!depth.feasible) {
        out.notes.push_back("no caverns: " + depth.reason);
        return out;
    }

    const LocalGrid grid = build_local_grid(deposit, cfg.resolution_m, ctx.margin_m);
    const Mask deposit_mask = rasterize_polygon(deposit.geometry, grid);

    std::vector<std::pair<ExclusionCategory, Mask>> exclusions;
    std::vector<Mask> hard_masks;
    for (const auto& layer : *ctx.layers) {
        Mask mask = layer_touches_grid(layer, grid) ? rasterize_exclusion(layer, grid)
                                                    : Mask(grid.width, grid.height);
        if (layer.applies_in_horizontal_mode) hard_masks.push_back(mask);
        exclusions.emplace_back(layer.category, std::move(mask));
    }

    EligibilityRaster raster = combine(grid, deposit_mask, exclusions);
    if (cfg.drilling == DrillingMode::Kind::horizontal) {
        std::vector<const Mask*> hard;
        for (const auto& m : hard_masks) hard.push_back(&m);
        raster = apply_drilling_mode(raster, {DrillingMode::Kind::horizontal, cfg.horizontal_reach_m},
                                     hard);
    }

    out.eligible_km2 = eligible_area_km2(raster);
    out.provenance = raster.provenance;

    if (cfg.export_masks) {
        const fs::path dir = fs::path(cfg.output_dir) / "masks";
        fs::create_directories(dir);
        write_pgm(raster.deposit_mask, (dir / (deposit.id + "_deposit.pgm")).string());
        write_pgm(raster.eligible, (dir / (deposit.id + "_eligible.pgm")).string());
    }

    out.placements = pack_caverns(raster, spec);
    const double phi = deposit.insoluble_fraction.value_or(0.0);
    if (!deposit.insoluble_fraction)
        out.notes.push_back("insoluble fraction unknown; capacities assume 0 (upper bound)");
    for (auto& p : out.placements) {
        p.deposit_id = deposit.id;
        p.country_iso3 = deposit.country_iso3;
        p.cavern_top_depth_m = depth.top_depth_m;
        p.insoluble_fraction = phi;
        p.capacity_GWh = cavern_capacity_GWh(p, cfg.thermo, *ctx.table);
    }
    return out;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("failed while writing " + path.string());
}

std::string placements_to_geojson(const std::vector<CavernPlacement>& placements) {
    json features = json::array();
    for (const auto& p : placements) {
        features.push_back(
            {{"type", "Feature"},
             {"geometry", {{"type", "Point"}, {"coordinates", json::array({p.lon, p.lat})}}},
             {"properties",
              {{"deposit_id", p.deposit_id},
               {"country_iso3", p.country_iso3},
               {"shape", to_string(p.spec.shape)},
               {"separation_factor", p.spec.separation_factor},
               {"cavern_top_depth_m", p.cavern_top_depth_m},
               {"height_m", p.spec.height_m},
               {"diameter_m", p.spec.diameter_m},
               {"volume_m3", p.spec.volume_m3},
               {"insoluble_fraction", p.insoluble_fraction},
               {"capacity_GWh", round3(p.capacity_GWh)}}}});
    }
    const json doc = {{"type", "FeatureCollection"}, {"features", features}};
    return doc.dump(2) + "\n";
}

std::string ledger_flags(const LedgerEntry& e) {
    std::string flags;
    const auto add = [&](const char* name) {
        if (!flags.empty()) flags += '|';
        flags += name;
    };
    if (e.self_sufficient()) add("self_sufficient");
    if (e.region_sufficient) add("region_sufficient");
    if (e.no_potential()) add("no_potential");
    return flags;
}

}  // namespace

RunArtifacts run_scenario(const ScenarioConfig& config, std::ostream* log) {
    config.validate();
    const auto info = [&](const std::string& line) {
        if (log) *log << line << "\n";
    };

    // --- load ---------------------------------------------------------
    const auto deposits_all = load_deposits(config.deposits_path);
    auto layers = load_exclusion_manifest(config.exclusion_manifest_path);
    for (auto& layer : layers) load_layer_geometry(layer);
    const DemandTable demand = load_demand(config.demand_path);
    const RegionMap regions = load_regions(config.regions_path);
    const CompressibilityTable table = CompressibilityTable::load_csv(config.z_table_path);
    info("loaded " + std::to_string(deposits_all.size()) + " deposits, " +
         std::to_string(layers.size()) + " exclusion layers");

    // --- geology ------------------------------------------------------
    const auto selected = select_case(deposits_all, config.geology_case, config.criteria);
    info("geology case " + std::string(to_string(config.geology_case)) + ": " +
         std::to_string(selected.size()) + " of " + std::to_string(deposits_all.size()) +
         " deposits selected");

    // --- per-deposit pipeline (deterministic for any worker count) -----
    double margin = config.resolution_m;
    for (const auto& layer : layers) margin = std::max(margin, layer.buffer_m);

    PipelineContext ctx{&config, &layers, &table, margin};
    std::vector<DepositOutcome> outcomes(selected.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= selected.size()) return;
            try {
                outcomes[i] = process_deposit(selected[i], ctx);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    try {
                        throw;
                    } catch (const Error& e) {
                        failure = std::make_exception_ptr(
                            Error("stage=pipeline deposit=" + selected[i].id + ": " + e.what()));
                    } catch (...) {
                        failure = std::current_exception();
                    }
                }
                return;
            }
        }
    };
    {
        const int n_threads = std::min<std::size_t>(config.workers, std::max<std::size_t>(selected.size(), 1));
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<CavernPlacement> placements;
    double eligible_km2 = 0.0;
    std::map<std::string, std::int64_t> excluded_by_category;
    std::vector<std::string> notes;
    for (const auto& o : outcomes) {
        placements.insert(placements.end(), o.placements.begin(), o.placements.end());
        eligible_km2 += o.eligible_km2;
        for (const auto& [cat, cells] : o.provenance) excluded_by_category[to_string(cat)] += cells;
        for (const auto& n : o.notes) notes.push_back(o.deposit_id + ": " + n);
    }
    info("packed " + std::to_string(placements.size()) + " caverns over " +
         fmt3(eligible_km2) + " km2 of eligible land");

    // --- ledger ---------------------------------------------------------
    std::vector<std::string> warnings;
    const auto country_potentials = aggregate_capacity(placements, Grouping::country, &regions,
                                                       &warnings);
    SufficiencyLedger countries = build_country_ledger(country_potentials, demand,
                                                       config.storage_fraction, &regions,
                                                       &warnings);
    const SufficiencyLedger region_ledger = regional_sufficiency(countries, regions, &warnings);
    const SharingPlan sharing = storage_abroad(countries, regions);

    // --- artifacts ------------------------------------------------------
    const fs::path out_dir = config.output_dir;
    fs::create_directories(out_dir);

    RunArtifacts artifacts;
    artifacts.output_dir = out_dir;
    artifacts.placements_geojson = out_dir / "placements.geojson";
    artifacts.countries_csv = out_dir / "countries.csv";
    artifacts.regions_csv = out_dir / "regions.csv";
    artifacts.summary_json = out_dir / "summary.json";
    artifacts.metadata_json = out_dir / "run_metadata.json";

    write_text(artifacts.placements_geojson, placements_to_geojson(placements));

    {
        std::string csv = "country_iso3,potential_TWh,need_TWh,sufficiency_pct,flags\n";
        for (const auto& e : countries.entries) {
            csv += csv_escape(e.key) + "," + fmt3(e.potential_TWh) + "," + fmt3(e.need_TWh) +
                   "," + e.sufficiency.to_pct_string() + "," + csv_escape(ledger_flags(e)) + "\n";
        }
        write_text(artifacts.countries_csv, csv);
    }
    {
        std::string csv = "region_name,potential_TWh,need_TWh,sufficiency_pct,storage_abroad_TWh\n";
        for (const auto& e : region_ledger.entries) {
            double abroad = 0.0;
            for (const auto& r : sharing.regions)
                if (r.region == e.key) abroad = r.storage_abroad_TWh;
            csv += csv_escape(e.key) + "," + fmt3(e.potential_TWh) + "," + fmt3(e.need_TWh) +
                   "," + e.sufficiency.to_pct_string() + "," + fmt3(abroad) + "\n";
        }
        write_text(artifacts.regions_csv, csv);
    }

    {
        double total_potential = 0.0, total_need = 0.0, total_demand = 0.0;
        for (const auto& e : countries.entries) {
            total_potential += e.potential_TWh;
            total_need += e.need_TWh;
            total_demand += e.demand_TWh;
        }
        double total_abroad = 0.0;
        json abroad = json::object();
        for (const auto& r : sharing.regions) {
            abroad[r.region] = round3(r.storage_abroad_TWh);
            total_abroad += r.storage_abroad_TWh;
        }
        const SufficiencyRatio global_ratio = sufficiency(total_potential, total_need);

        const double built = std::min(total_potential, total_need);
        json side = {
            {"salt_mass_rate_Mt_per_a",
             round3(salt_mass_rate_Mt_per_a(placements, config.build_horizon_years, config.thermo))},
            {"build_horizon_years", config.build_horizon_years},
            {"needed_buildout_TWh", round3(built)},
            {"expansion_rate_TWh_per_a",
             round3(expansion_rate_TWh_per_a(built, config.build_horizon_years))}};
        if (config.baseline_trade_TWh > 0)
            side["transport_increment_pct"] =
                round3(transport_increment_pct(total_abroad, config.baseline_trade_TWh));

        json summary = {
            {"global",
             {{"potential_TWh", round3(total_potential)},
              {"need_TWh", round3(total_need)},
              {"annual_demand_TWh", round3(total_demand)},
              {"sufficiency_pct", global_ratio.to_pct_string()},
              {"eligible_area_km2", round3(eligible_km2)},
              {"cavern_count", placements.size()},
              {"selected_deposit_count", selected.size()}}},
            {"balanced_demand_share_pct",
             {{"country_mode", round3(balanced_demand_share_pct(countries, ShareMode::country))},
              {"region_mode", round3(balanced_demand_share_pct(countries, ShareMode::region))}}},
            {"sufficient_countries", json::object()},
            {"storage_abroad_TWh", {{"by_region", abroad}, {"total", round3(total_abroad)}}},
            {"excluded_cells_by_category", excluded_by_category},
            {"side_computations", side},
            {"notes", notes},
            {"warnings", warnings}};
        const auto [c_count, c_total] = sufficient_country_count(countries, ShareMode::country);
        const auto [r_count, r_total] = sufficient_country_count(countries, ShareMode::region);
        summary["sufficient_countries"] = {
            {"country_mode", {{"count", c_count}, {"total", c_total}}},
            {"region_mode", {{"count", r_count}, {"total", r_total}}}};
        write_text(artifacts.summary_json, summary.dump(2) + "\n");
    }

    {
        json hashes = {{"deposits", sha256_file_hex(config.deposits_path)},
                       {"exclusion_manifest", sha256_file_hex(config.exclusion_manifest_path)},
                       {"demand", sha256_file_hex(config.demand_path)},
                       {"regions", sha256_file_hex(config.regions_path)},
                       {"z_table", sha256_file_hex(config.z_table_path)}};
        json layer_hashes = json::object();
        for (const auto& layer : layers)
            layer_hashes[layer.geometry_path] = sha256_file_hex(layer.geometry_path);
        hashes["exclusion_layers"] = layer_hashes;

        // The echo covers scenario-defining parameters only: the worker
        // count cannot change results (determinism contract), so it stays
        // out to keep artifacts byte-identical across pool sizes.
        json config_echo = config.to_json();
        config_echo.erase("workers");
        const json metadata = {{"version", kVersion},
                               {"config", config_echo},
                               {"input_hashes", hashes}};
        write_text(artifacts.metadata_json, metadata.dump(2) + "\n");
    }
    info("artifacts written to " + out_dir.string());
    return artifacts;
}

namespace {

json read_json_path(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    return j;
}

struct CountryRow {
    double potential = 0.0;
    bool has_sufficiency = false;
    double sufficiency_pct = 0.0;
};

std::map<std::string, CountryRow> read_country_rows(const fs::path& run_dir) {
    const CsvTable csv = read_csv((run_dir / "countries.csv").string());
    const int c_iso = csv.column("country_iso3");
    const int c_pot = csv.column("potential_TWh");
    const int c_suff = csv.column("sufficiency_pct");
    if (c_iso < 0 || c_pot < 0 || c_suff < 0)
        throw ValidationError(run_dir.string() + "/countries.csv: unexpected header");
    std::map<std::string, CountryRow> rows;
    for (const auto& row : csv.rows) {
        CountryRow r;
        r.potential = std::stod(row[c_pot]);
        if (row[c_suff] != "unbounded" && row[c_suff] != "undefined") {
            r.has_sufficiency = true;
            r.sufficiency_pct = std::stod(row[c_suff]);
        }
        rows[row[c_iso]] = r;
    }
    return rows;
}

json delta_pct(double a, double b) {
    if (a == 0.0 && b == 0.0) return 0.0;
    if (a == 0.0) return "new";
    return round3((b - a) / a * 100.0);
}

}  // namespace

json diff_scenarios(const fs::path& run_a, const fs::path& run_b) {
    const json meta_a = read_json_path(run_a / "run_metadata.json");
    const json meta_b = read_json_path(run_b / "run_metadata.json");
    if (meta_a.at("input_hashes") != meta_b.at("input_hashes"))
        throw ValidationError(
            "input datasets differ between the two runs (hash mismatch); a scenario diff only "
            "makes sense on identical inputs");

    const auto rows_a = read_country_rows(run_a);
    const auto rows_b = read_country_rows(run_b);

    json countries = json::object();
    for (const auto& [iso3, a] : rows_a) {
        const auto it = rows_b.find(iso3);
        if (it == rows_b.end()) continue;
        const CountryRow& b = it->second;
        json entry = {{"capacity_delta_pct", delta_pct(a.potential, b.potential)}};
        if (a.has_sufficiency && b.has_sufficiency)
            entry["sufficiency_delta_pct"] = delta_pct(a.sufficiency_pct, b.sufficiency_pct);
        countries[iso3] = entry;
    }

    const json summary_a = read_json_path(run_a / "summary.json");
    const json summary_b = read_json_path(run_b / "summary.json");
    const double pot_a = summary_a.at("global").at("potential_TWh").get<double>();
    const double pot_b = summary_b.at("global").at("potential_TWh").get<double>();

    return json{{"a", {{"output_dir", run_a.string()},
                       {"config", meta_a.at("config")}}},
                {"b", {{"output_dir", run_b.string()},
                       {"config", meta_b.at("config")}}},
                {"global", {{"capacity_delta_pct", delta_pct(pot_a, pot_b)}}},
                {"countries", countries}};
}

}  // namespace halite
