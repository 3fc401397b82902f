#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "halite/capacity.hpp"
#include "halite/energy_system.hpp"
#include "halite/errors.hpp"
#include "halite/geology.hpp"
#include "halite/placement.hpp"
#include "halite/scenario.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::null: return py::none();
        case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer: return py::int_(j.get<long long>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
        case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
        case nlohmann::json::value_t::array: {
            py::list out;
            for (const auto& v : j) out.append(json_to_py(v));
            return out;
        }
        case nlohmann::json::value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
            return out;
        }
        default: return py::none();
    }
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw halite::IoError("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

halite::SaltType parse_salt_type(const std::string& s) {
    if (s == "domal") return halite::SaltType::domal;
    if (s == "bedded") return halite::SaltType::bedded;
    throw halite::ValidationError("salt_type must be domal or bedded");
}

}  // namespace

PYBIND11_MODULE(_halite, m) {
    m.doc() = "salt cavern hydrogen storage potential - core operations";
    m.attr("__version__") = halite::kVersion;

    py::register_exception<halite::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<halite::RangeError>(m, "RangeError", PyExc_ValueError);

    py::class_<halite::ThermoParams>(m, "ThermoParams")
        .def(py::init<>())
        .def_readwrite("lower_heating_value_J_per_kg",
                       &halite::ThermoParams::lower_heating_value_J_per_kg)
        .def_readwrite("rock_density_kg_per_m3", &halite::ThermoParams::rock_density_kg_per_m3)
        .def_readwrite("gravity_m_per_s2", &halite::ThermoParams::gravity_m_per_s2)
        .def_readwrite("surface_temperature_K", &halite::ThermoParams::surface_temperature_K)
        .def_readwrite("geothermal_gradient_K_per_m",
                       &halite::ThermoParams::geothermal_gradient_K_per_m)
        .def_readwrite("p_max_factor", &halite::ThermoParams::p_max_factor)
        .def_readwrite("p_min_factor", &halite::ThermoParams::p_min_factor)
        .def_readwrite("salt_density_kg_per_m3", &halite::ThermoParams::salt_density_kg_per_m3);

    py::class_<halite::CompressibilityTable>(m, "CompressibilityTable")
        .def_static("load_csv", &halite::CompressibilityTable::load_csv, py::arg("path"))
        .def("z", &halite::CompressibilityTable::z, py::arg("pressure_pa"),
             py::arg("temperature_k"));

    m.def(
        "lithostatic_pressure_pa",
        [](double depth_m, const halite::ThermoParams& params) {
            return halite::lithostatic_pressure_Pa(depth_m, params);
        },
        py::arg("depth_m"), py::arg("params") = halite::ThermoParams{});

    m.def(
        "operating_pressures_pa",
        [](double p_lith_pa, const halite::ThermoParams& params) {
            const auto b = halite::operating_pressures(p_lith_pa, params);
            return py::make_tuple(b.p_min_Pa, b.p_max_Pa);
        },
        py::arg("p_lith_pa"), py::arg("params") = halite::ThermoParams{});

    m.def(
        "cavern_capacity_gwh",
        [](double top_depth_m, double height_m, double volume_m3, double insoluble_fraction,
           const halite::CompressibilityTable& table, const halite::ThermoParams& params) {
            return halite::cavern_capacity_J(top_depth_m, height_m, volume_m3,
                                             insoluble_fraction, params, table) /
                   halite::kJoulePerGWh;
        },
        py::arg("top_depth_m"), py::arg("height_m"), py::arg("volume_m3"),
        py::arg("insoluble_fraction"), py::arg("table"),
        py::arg("params") = halite::ThermoParams{});

    m.def(
        "classify_deposit",
        [](std::optional<double> depth_top_min_m, std::optional<double> depth_top_max_m,
           std::optional<double> thickness_m, std::optional<double> insoluble_fraction,
           double area_km2) {
            halite::SaltDeposit d;
            if (depth_top_min_m && depth_top_max_m)
                d.depth_top_m = halite::DepthInterval{*depth_top_min_m, *depth_top_max_m};
            d.thickness_m = thickness_m;
            d.insoluble_fraction = insoluble_fraction;
            d.area_km2 = area_km2;
            return std::string(
                halite::to_string(halite::classify_deposit(d, halite::SuitabilityCriteria{})));
        },
        py::arg("depth_top_min_m"), py::arg("depth_top_max_m"), py::arg("thickness_m"),
        py::arg("insoluble_fraction"), py::arg("area_km2"));

    m.def(
        "pack_cavern_count",
        [](const std::vector<std::vector<bool>>& eligible, double cell_size_m,
           const std::string& salt_type, int separation_factor) {
            if (eligible.empty() || eligible.front().empty())
                throw halite::ValidationError("eligible mask must be non-empty");
            halite::EligibilityRaster raster;
            raster.grid.cell_size_m = cell_size_m;
            raster.grid.height = static_cast<int>(eligible.size());
            raster.grid.width = static_cast<int>(eligible.front().size());
            raster.eligible = halite::Mask(raster.grid.width, raster.grid.height);
            raster.deposit_mask = halite::Mask(raster.grid.width, raster.grid.height, true);
            for (int r = 0; r < raster.grid.height; ++r) {
                if (static_cast<int>(eligible[r].size()) != raster.grid.width)
                    throw halite::ValidationError("eligible mask rows differ in length");
                for (int c = 0; c < raster.grid.width; ++c)
                    raster.eligible.set(r, c, eligible[r][c]);
            }
            const auto spec =
                halite::CavernSpec::for_salt_type(parse_salt_type(salt_type), separation_factor);
            return halite::pack_caverns(raster, spec).size();
        },
        py::arg("eligible"), py::arg("cell_size_m"), py::arg("salt_type"),
        py::arg("separation_factor"));

    m.def("storage_need_twh", &halite::storage_need_TWh, py::arg("annual_demand_twh"),
          py::arg("fraction"));

    m.def(
        "sufficiency_pct",
        [](double potential_twh, double need_twh) -> py::object {
            const auto r = halite::sufficiency(potential_twh, need_twh);
            if (r.kind == halite::SufficiencyRatio::Kind::value)
                return py::float_(r.ratio * 100.0);
            return py::str(r.to_pct_string());
        },
        py::arg("potential_twh"), py::arg("need_twh"));

    m.def("transport_increment_pct", &halite::transport_increment_pct, py::arg("shared_twh"),
          py::arg("baseline_trade_twh"));
    m.def("expansion_rate_twh_per_a", &halite::expansion_rate_TWh_per_a,
          py::arg("total_built_twh"), py::arg("years"));

    m.def(
        "run_scenario",
        [](const std::string& config_path) {
            const auto artifacts =
                halite::run_scenario(halite::ScenarioConfig::from_file(config_path));
            py::dict out;
            out["output_dir"] = artifacts.output_dir.string();
            out["summary"] = json_to_py(read_json_file(artifacts.summary_json.string()));
            return out;
        },
        py::arg("config_path"));

    m.def(
        "diff_scenarios",
        [](const std::string& run_a, const std::string& run_b) {
            return json_to_py(halite::diff_scenarios(run_a, run_b));
        },
        py::arg("run_a"), py::arg("run_b"));
}
