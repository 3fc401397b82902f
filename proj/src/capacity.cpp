#include "halite/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "halite/csv.hpp"
#include "halite/errors.hpp"

namespace halite {

void ThermoParams::validate() const {
    const double positives[] = {lower_heating_value_J_per_kg,
                                molar_mass_kg_per_mol,
                                gas_constant_J_per_molK,
                                rock_density_kg_per_m3,
                                gravity_m_per_s2,
                                surface_temperature_K,
                                geothermal_gradient_K_per_m,
                                p_max_factor,
                                p_min_factor,
                                salt_density_kg_per_m3};
    for (const double v : positives)
        if (!(v > 0)) throw ValidationError("thermo parameters must all be positive");
    if (!(p_min_factor * p_max_factor < 1.0))
        throw ValidationError("p_min_factor * p_max_factor must be below 1");
}

CompressibilityTable CompressibilityTable::load_csv(const std::string& path) {
    const CsvTable csv = read_csv(path);
    if (csv.header.size() < 2 || csv.header[0] != "p_MPa")
        throw SchemaError(path + ": expected header p_MPa,<T_K>,...");

    CompressibilityTable table;
    for (std::size_t i = 1; i < csv.header.size(); ++i) {
        try {
            table.temperatures_.push_back(std::stod(csv.header[i]));
        } catch (...) {
            throw SchemaError(path + ": temperature column \"" + csv.header[i] +
                              "\" is not a number");
        }
    }
    for (const auto& row : csv.rows) {
        try {
            table.pressures_.push_back(std::stod(row[0]) * 1e6);  // MPa -> Pa
            for (std::size_t i = 1; i < row.size(); ++i) table.z_.push_back(std::stod(row[i]));
        } catch (const Error&) {
            throw;
        } catch (...) {
            throw SchemaError(path + ": non-numeric table value");
        }
    }
    try {
        table.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return table;
}

CompressibilityTable CompressibilityTable::from_grid(std::vector<double> pressures_Pa,
                                                     std::vector<double> temperatures_K,
                                                     std::vector<double> z_values) {
    CompressibilityTable table;
    table.pressures_ = std::move(pressures_Pa);
    table.temperatures_ = std::move(temperatures_K);
    table.z_ = std::move(z_values);
    table.validate();
    return table;
}

void CompressibilityTable::validate() const {
    if (pressures_.size() < 2 || temperatures_.size() < 2)
        throw ValidationError("compressibility table needs at least a 2x2 grid");
    if (z_.size() != pressures_.size() * temperatures_.size())
        throw ValidationError("compressibility table shape mismatch");
    if (!std::is_sorted(pressures_.begin(), pressures_.end()) ||
        !std::is_sorted(temperatures_.begin(), temperatures_.end()))
        throw ValidationError("compressibility table axes must be ascending");
    for (const double z : z_)
        if (!(z > 0)) throw ValidationError("compressibility factors must be positive");
    // Ideal-gas limit: the lowest tabulated pressure must sit close to Z = 1,
    // which catches transposed or mislabeled tables early.
    for (std::size_t t = 0; t < temperatures_.size(); ++t)
        if (std::abs(z_[t] - 1.0) > 0.02)
            throw ValidationError("compressibility table does not approach Z=1 at low pressure");
}

double CompressibilityTable::z(double pressure_Pa, double temperature_K) const {
    if (pressure_Pa < pressures_.front() || pressure_Pa > pressures_.back())
        throw RangeError("pressure " + std::to_string(pressure_Pa / 1e6) +
                         " MPa outside tabulated range [" +
                         std::to_string(pressures_.front() / 1e6) + ", " +
                         std::to_string(pressures_.back() / 1e6) + "]");
    if (temperature_K < temperatures_.front() || temperature_K > temperatures_.back())
        throw RangeError("temperature " + std::to_string(temperature_K) +
                         " K outside tabulated range [" + std::to_string(temperatures_.front()) +
                         ", " + std::to_string(temperatures_.back()) + "]");

    const auto cell_of = [](const std::vector<double>& axis, double v) {
        auto it = std::upper_bound(axis.begin(), axis.end(), v);
        std::size_t hi = static_cast<std::size_t>(it - axis.begin());
        if (hi == axis.size()) --hi;          // v == axis.back()
        if (hi == 0) ++hi;                    // v == axis.front()
        return hi - 1;
    };
    const std::size_t ip = cell_of(pressures_, pressure_Pa);
    const std::size_t it = cell_of(temperatures_, temperature_K);

    const double tp = (pressure_Pa - pressures_[ip]) / (pressures_[ip + 1] - pressures_[ip]);
    const double tt =
        (temperature_K - temperatures_[it]) / (temperatures_[it + 1] - temperatures_[it]);

    const std::size_t nt = temperatures_.size();
    const double z00 = z_[ip * nt + it];
    const double z01 = z_[ip * nt + it + 1];
    const double z10 = z_[(ip + 1) * nt + it];
    const double z11 = z_[(ip + 1) * nt + it + 1];
    return (1 - tp) * ((1 - tt) * z00 + tt * z01) + tp * ((1 - tt) * z10 + tt * z11);
}

double lithostatic_pressure_Pa(double depth_m, const ThermoParams& params) {
    if (!(depth_m > 0)) throw ValidationError("depth must be positive");
    return params.rock_density_kg_per_m3 * params.gravity_m_per_s2 * depth_m;
}

PressureBounds operating_pressures(double p_lith_Pa, const ThermoParams& params) {
    if (!(p_lith_Pa > 0)) throw ValidationError("lithostatic pressure must be positive");
    PressureBounds b;
    b.p_max_Pa = params.p_max_factor * p_lith_Pa;
    b.p_min_Pa = params.p_min_factor * b.p_max_Pa;
    return b;
}

double cavern_temperature_K(double top_depth_m, double height_m, const ThermoParams& params) {
    return params.surface_temperature_K +
           params.geothermal_gradient_K_per_m * (top_depth_m + 0.5 * height_m);
}

double cavern_capacity_J(double top_depth_m, double height_m, double volume_m3,
                         double insoluble_fraction, const ThermoParams& params,
                         const CompressibilityTable& table) {
    if (insoluble_fraction < 0.0 || insoluble_fraction > 1.0)
        throw ValidationError("insoluble_fraction must be within [0, 1]");

    const double p_lith = lithostatic_pressure_Pa(top_depth_m, params);
    const auto [p_min, p_max] = operating_pressures(p_lith, params);
    const double temp = cavern_temperature_K(top_depth_m, height_m, params);

    // density difference between the full and the empty cavern state
    const double rs_t = params.specific_gas_constant() * temp;
    const double rho_max = p_max / (table.z(p_max, temp) * rs_t);
    const double rho_min = p_min / (table.z(p_min, temp) * rs_t);

    return params.lower_heating_value_J_per_kg * volume_m3 * (1.0 - insoluble_fraction) *
           (rho_max - rho_min);
}

double cavern_capacity_GWh(const CavernPlacement& placement, const ThermoParams& params,
                           const CompressibilityTable& table) {
    return cavern_capacity_J(placement.cavern_top_depth_m, placement.spec.height_m,
                             placement.spec.volume_m3, placement.insoluble_fraction, params,
                             table) /
           kJoulePerGWh;
}

std::vector<CapacityRow> aggregate_capacity(const std::vector<CavernPlacement>& placements,
                                            Grouping grouping, const RegionMap* regions,
                                            std::vector<std::string>* warnings) {
    // Fixed summation order (deposit id, lattice node) makes the totals
    // exact-identical under any permutation of the input.
    std::vector<const CavernPlacement*> ordered;
    ordered.reserve(placements.size());
    for (const auto& p : placements) ordered.push_back(&p);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const CavernPlacement* a, const CavernPlacement* b) {
                         if (a->deposit_id != b->deposit_id) return a->deposit_id < b->deposit_id;
                         if (a->lattice_row != b->lattice_row)
                             return a->lattice_row < b->lattice_row;
                         return a->lattice_col < b->lattice_col;
                     });

    std::map<std::string, CapacityRow> groups;
    for (const CavernPlacement* placement : ordered) {
        const CavernPlacement& p = *placement;
        std::string key;
        switch (grouping) {
            case Grouping::deposit: key = p.deposit_id; break;
            case Grouping::country: key = p.country_iso3; break;
            case Grouping::region: {
                const std::string* region =
                    regions ? regions->region_of(p.country_iso3) : nullptr;
                key = region ? *region : "";
                break;
            }
        }
        if (key.empty()) {
            key = "unassigned";
            if (warnings)
                warnings->push_back("placement in deposit " + p.deposit_id +
                                    " has no group assignment; bucketed as unassigned");
        }
        auto& row = groups[key];
        row.key = key;
        row.capacity_TWh += p.capacity_GWh / kGWhPerTWh;
        row.cavern_count += 1;
    }
    std::vector<CapacityRow> out;
    out.reserve(groups.size());
    for (auto& [key, row] : groups) out.push_back(std::move(row));
    return out;
}

double salt_mass_rate_Mt_per_a(const std::vector<CavernPlacement>& placements,
                               double build_horizon_years, const ThermoParams& params) {
    if (!(build_horizon_years > 0)) throw ValidationError("build horizon must be positive");
    double mass_kg = 0.0;
    for (const auto& p : placements)
        mass_kg += p.spec.volume_m3 * (1.0 - p.insoluble_fraction) * params.salt_density_kg_per_m3;
    return mass_kg / 1e9 / build_horizon_years;  // kg -> Mt
}

}  // namespace halite
