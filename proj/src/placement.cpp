#include "halite/placement.hpp"

#include <cmath>

#include "halite/errors.hpp"

namespace halite {

CavernSpec CavernSpec::for_salt_type(SaltType type, int separation_factor) {
    CavernSpec spec;
    spec.shape = type;
    spec.separation_factor = separation_factor;
    if (type == SaltType::domal) {
        spec.height_m = 300.0;
        spec.diameter_m = 58.0;
        spec.volume_m3 = 750000.0;
    } else {
        spec.height_m = 120.0;
        spec.diameter_m = 84.0;
        spec.volume_m3 = 500000.0;
    }
    spec.validate();
    return spec;
}

void CavernSpec::validate() const {
    if (separation_factor < 3 || separation_factor > 5)
        throw ValidationError("separation_factor must be 3, 4 or 5");
    if (height_m <= 0 || diameter_m <= 0 || volume_m3 <= 0)
        throw ValidationError("cavern geometry must be positive");
}

std::vector<CavernPlacement> pack_caverns(const EligibilityRaster& raster,
                                          const CavernSpec& spec) {
    spec.validate();
    const LocalGrid& grid = raster.grid;
    const double pitch = spec.pitch_m();
    const double extent_x = grid.width * grid.cell_size_m;
    const double extent_y = grid.height * grid.cell_size_m;

    std::vector<CavernPlacement> placements;
    // Lattice anchored on the first cell center, row-major for determinism.
    for (int n = 0;; ++n) {
        const double off_y = 0.5 * grid.cell_size_m + n * pitch;
        if (off_y >= extent_y) break;
        const int row = static_cast<int>(off_y / grid.cell_size_m);
        for (int m = 0;; ++m) {
            const double off_x = 0.5 * grid.cell_size_m + m * pitch;
            if (off_x >= extent_x) break;
            const int col = static_cast<int>(off_x / grid.cell_size_m);
            if (!raster.eligible.get(row, col)) continue;

            CavernPlacement p;
            const LonLat ll =
                grid.proj.to_lonlat({grid.origin_x_m + off_x, grid.origin_y_m + off_y});
            p.lon = ll.lon;
            p.lat = ll.lat;
            p.lattice_row = n;
            p.lattice_col = m;
            p.spec = spec;
            placements.push_back(std::move(p));
        }
    }
    return placements;
}

DepthAssignment assign_depth(const CavernSpec& spec, const DepthInterval& window,
                             const std::optional<DepthInterval>& deposit_interval) {
    DepthAssignment out;
    double top = window.max_m - spec.height_m;
    if (deposit_interval) top = std::min(top, deposit_interval->max_m);

    double floor_depth = window.min_m;
    if (deposit_interval) floor_depth = std::max(floor_depth, deposit_interval->min_m);

    if (top < floor_depth) {
        out.feasible = false;
        out.reason = "window [" + std::to_string(window.min_m) + ", " +
                     std::to_string(window.max_m) + "] m too thin for a " +
                     std::to_string(spec.height_m) + " m cavern";
        return out;
    }
    out.feasible = true;
    out.top_depth_m = top;
    return out;
}

}  // namespace halite
