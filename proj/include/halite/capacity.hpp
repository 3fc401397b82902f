#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "halite/geodata.hpp"
#include "halite/placement.hpp"

namespace halite {

struct ThermoParams {
    double lower_heating_value_J_per_kg = 119.96e6;  // H_U, LHV of hydrogen
    double molar_mass_kg_per_mol = 0.0020159;        // M_H2
    double gas_constant_J_per_molK = 8.314;          // R
    double rock_density_kg_per_m3 = 2550.0;          // overburden
    double gravity_m_per_s2 = 9.81;
    double surface_temperature_K = 288.15;
    double geothermal_gradient_K_per_m = 0.030;
    double p_max_factor = 0.8;  // p_max = factor * p_lith
    double p_min_factor = 0.3;  // p_min = factor * p_max
    double salt_density_kg_per_m3 = 2170.0;  // for brine/salt mass estimates

    double specific_gas_constant() const {
        return gas_constant_J_per_molK / molar_mass_kg_per_mol;
    }
    void validate() const;
};

// Hydrogen compressibility factor Z on a rectilinear (pressure, temperature)
// grid with bilinear interpolation. Queries outside the tabulated hull
// throw RangeError; the table is never extrapolated.
class CompressibilityTable {
public:
    // CSV layout: header "p_MPa,<T1>,<T2>,..."; one row per pressure.
    static CompressibilityTable load_csv(const std::string& path);
    static CompressibilityTable from_grid(std::vector<double> pressures_Pa,
                                          std::vector<double> temperatures_K,
                                          std::vector<double> z_values);

    double z(double pressure_Pa, double temperature_K) const;

    double min_pressure_Pa() const { return pressures_.front(); }
    double max_pressure_Pa() const { return pressures_.back(); }
    double min_temperature_K() const { return temperatures_.front(); }
    double max_temperature_K() const { return temperatures_.back(); }

private:
    std::vector<double> pressures_;     // ascending, Pa
    std::vector<double> temperatures_;  // ascending, K
    std::vector<double> z_;             // row-major [pressure][temperature]

    void validate() const;
};

// p_lith = rho_rock * g * depth. Depth must be positive.
double lithostatic_pressure_Pa(double depth_m, const ThermoParams& params);

struct PressureBounds {
    double p_min_Pa = 0.0;
    double p_max_Pa = 0.0;
};

PressureBounds operating_pressures(double p_lith_Pa, const ThermoParams& params);

// Linear geothermal profile evaluated at cavern mid-height.
double cavern_temperature_K(double top_depth_m, double height_m, const ThermoParams& params);

// Working-gas energy between the operating pressure bounds:
//   E = H_U * V * (1 - phi) * [p_max/Z(p_max,T) - p_min/Z(p_min,T)] / (R/M * T)
double cavern_capacity_J(double top_depth_m, double height_m, double volume_m3,
                         double insoluble_fraction, const ThermoParams& params,
                         const CompressibilityTable& table);

double cavern_capacity_GWh(const CavernPlacement& placement, const ThermoParams& params,
                           const CompressibilityTable& table);

enum class Grouping { country, deposit, region };

struct CapacityRow {
    std::string key;
    double capacity_TWh = 0.0;
    std::int64_t cavern_count = 0;
};

// Sums per group in TWh, keys sorted; placements with no country (or no
// region assignment) land in "unassigned" and a warning is emitted.
std::vector<CapacityRow> aggregate_capacity(const std::vector<CavernPlacement>& placements,
                                            Grouping grouping,
                                            const RegionMap* regions = nullptr,
                                            std::vector<std::string>* warnings = nullptr);

// Leached salt mass if all placements are built over the horizon, Mt/a.
double salt_mass_rate_Mt_per_a(const std::vector<CavernPlacement>& placements,
                               double build_horizon_years, const ThermoParams& params);

inline constexpr double kJoulePerGWh = 3.6e12;
inline constexpr double kGWhPerTWh = 1000.0;

}  // namespace halite
