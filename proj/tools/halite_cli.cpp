#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "halite/csv.hpp"
#include "halite/errors.hpp"
#include "halite/scenario.hpp"

namespace fs = std::filesystem;

namespace {

// Fallback z-table lookup: config value first, then the data directory from
// the environment, then ./data next to the current working directory.
void resolve_z_table(halite::ScenarioConfig& config) {
    if (!config.z_table_path.empty()) return;
    if (const char* dir = std::getenv("HALITE_DATA_DIR")) {
        const fs::path candidate = fs::path(dir) / "h2_compressibility_z.csv";
        if (fs::exists(candidate)) {
            config.z_table_path = candidate.string();
            return;
        }
    }
    const fs::path local = fs::path("data") / "h2_compressibility_z.csv";
    if (fs::exists(local)) config.z_table_path = local.string();
}

int run_command(const std::string& config_path, const std::string& geology_case,
                int separation, const std::string& drilling, double resolution, double fraction,
                const std::string& out_dir, int workers) {
    halite::ScenarioConfig config = halite::ScenarioConfig::from_file(config_path);

    // CLI flags override config fields.
    if (!geology_case.empty())
        config.geology_case = geology_case == "guaranteed_and_partial"
                                  ? halite::GeologyCase::guaranteed_and_partial
                                  : halite::GeologyCase::guaranteed_only;
    if (separation > 0) config.separation_factor = separation;
    if (!drilling.empty())
        config.drilling = drilling == "horizontal" ? halite::DrillingMode::Kind::horizontal
                                                   : halite::DrillingMode::Kind::vertical;
    if (resolution > 0) config.resolution_m = resolution;
    if (fraction > 0) config.storage_fraction = fraction;
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (workers > 0) config.workers = workers;
    resolve_z_table(config);

    const auto artifacts = halite::run_scenario(config, &std::cout);
    std::cout << "ok: " << artifacts.summary_json.string() << "\n";
    return 0;
}

int diff_command(const std::string& run_a, const std::string& run_b, const std::string& out_path) {
    const auto report = halite::diff_scenarios(run_a, run_b);
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw halite::IoError("cannot write " + out_path);
        out << text;
        std::cout << "diff written to " << out_path << "\n";
    }
    return 0;
}

int validate_command(const std::string& config_path) {
    halite::ScenarioConfig config = halite::ScenarioConfig::from_file(config_path);
    resolve_z_table(config);
    config.validate();

    int problems = 0;
    std::vector<halite::LoadIssue> issues;
    const auto deposits = halite::load_deposits(config.deposits_path, &issues);
    std::cout << config.deposits_path << ": " << deposits.size() << " deposits\n";
    for (const auto& issue : issues) {
        std::cout << "  " << (issue.rejected ? "rejected " : "note ") << issue.where << ": "
                  << issue.message << "\n";
        if (issue.rejected) ++problems;
    }

    auto layers = halite::load_exclusion_manifest(config.exclusion_manifest_path);
    for (auto& layer : layers) {
        halite::load_layer_geometry(layer);
        std::cout << layer.geometry_path << ": " << halite::to_string(layer.category)
                  << ", buffer " << layer.buffer_m << " m, "
                  << layer.geometry.polygons.size() << " polygons, " << layer.geometry.lines.size()
                  << " lines, " << layer.geometry.points.size() << " points\n";
    }

    const auto demand = halite::load_demand(config.demand_path);
    std::cout << config.demand_path << ": " << demand.rows.size() << " countries\n";
    const auto regions = halite::load_regions(config.regions_path);
    std::cout << config.regions_path << ": " << regions.rows.size() << " assignments, "
              << regions.regions.size() << " regions\n";
    const auto table = halite::CompressibilityTable::load_csv(config.z_table_path);
    std::cout << config.z_table_path << ": Z table " << table.min_pressure_Pa() / 1e6 << ".."
              << table.max_pressure_Pa() / 1e6 << " MPa, " << table.min_temperature_K() << ".."
              << table.max_temperature_K() << " K\n";

    if (problems > 0) {
        std::cout << problems << " feature(s) rejected\n";
        return 1;
    }
    std::cout << "all inputs valid\n";
    return 0;
}

int export_command(const std::string& run_dir, const std::string& metric,
                   const std::string& out_path) {
    const auto rows = halite::read_csv((fs::path(run_dir) / "countries.csv").string());
    const int c_iso = rows.column("country_iso3");
    const int c_metric = rows.column(metric);
    if (c_iso < 0 || c_metric < 0)
        throw halite::ValidationError("metric \"" + metric + "\" not found in countries.csv");
    std::string csv = "country_iso3," + metric + "\n";
    for (const auto& row : rows.rows)
        csv += halite::csv_escape(row[c_iso]) + "," + halite::csv_escape(row[c_metric]) + "\n";
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw halite::IoError("cannot write " + out_path);
        out << csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"halite - salt cavern hydrogen storage potential"};
    app.require_subcommand(1);

    std::string config_path, geology_case, drilling, out_dir;
    int separation = 0, workers = 0;
    double resolution = 0, fraction = 0;

    auto* run = app.add_subcommand("run", "run a scenario end to end");
    run->add_option("--config", config_path, "scenario config JSON")->required();
    run->add_option("--case", geology_case, "geology case")
        ->check(CLI::IsMember({"guaranteed_only", "guaranteed_and_partial"}));
    run->add_option("--separation", separation, "separation factor (3, 4 or 5)");
    run->add_option("--drilling", drilling, "drilling mode")
        ->check(CLI::IsMember({"vertical", "horizontal"}));
    run->add_option("--resolution", resolution, "grid resolution in meters");
    run->add_option("--fraction", fraction, "storage need as fraction of annual demand");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--workers", workers, "worker thread count");

    std::string run_a, run_b, diff_out;
    auto* diff = app.add_subcommand("diff", "compare two finished runs");
    diff->add_option("a", run_a, "first run output directory")->required();
    diff->add_option("b", run_b, "second run output directory")->required();
    diff->add_option("--out", diff_out, "write the report here instead of stdout");

    std::string validate_config;
    auto* validate = app.add_subcommand("validate-inputs", "check all configured input files");
    validate->add_option("--config", validate_config, "scenario config JSON")->required();

    std::string export_run, export_metric = "sufficiency_pct", export_out;
    auto* exp = app.add_subcommand("export", "emit per-country values for mapping tools");
    exp->add_option("run", export_run, "run output directory")->required();
    exp->add_option("--metric", export_metric, "countries.csv column to export");
    exp->add_option("--out", export_out, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return run_command(config_path, geology_case, separation, drilling, resolution,
                               fraction, out_dir, workers);
        if (diff->parsed()) return diff_command(run_a, run_b, diff_out);
        if (validate->parsed()) return validate_command(validate_config);
        if (exp->parsed()) return export_command(export_run, export_metric, export_out);
    } catch (const halite::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
