#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "halite/geodata.hpp"
#include "halite/grid.hpp"

namespace halite {

struct EligibilityRaster {
    LocalGrid grid;
    Mask eligible;       // true = available for cavern placement
    Mask deposit_mask;   // cell centers inside the deposit polygon
    // (category, cells excluded inside the deposit), overlaps attributed to
    // the first applied layer. Reporting only; the mask itself is
    // order-independent.
    std::vector<std::pair<ExclusionCategory, std::int64_t>> provenance;
};

struct DrillingMode {
    enum class Kind { vertical, horizontal };
    Kind kind = Kind::vertical;
    double reach_m = 5000.0;  // lateral well reach, horizontal mode only
};

const char* to_string(DrillingMode::Kind k);

// Cells whose center lies inside the multipolygon (scanline, even-odd).
Mask rasterize_polygon(const MultiPolygon& mp, const LocalGrid& grid);

// Cells whose center lies within the layer geometry dilated by buffer_m:
// polygon interiors are scanline-filled, then every boundary segment, line
// segment and point is stamped with the exact Euclidean distance test in
// local metric coordinates. Geometry outside the grid yields an empty mask.
Mask rasterize_exclusion(const ExclusionLayer& layer, const LocalGrid& grid);

// eligible = deposit AND NOT any exclusion. Masks must share the grid shape.
EligibilityRaster combine(const LocalGrid& grid, const Mask& deposit_mask,
                          const std::vector<std::pair<ExclusionCategory, Mask>>& exclusions);

// Vertical mode returns the raster unchanged. Horizontal mode extends
// eligibility to cells inside the deposit, not hard-excluded, and within
// reach_m (cell-center to cell-center) of a vertically eligible cell.
EligibilityRaster apply_drilling_mode(const EligibilityRaster& raster, const DrillingMode& mode,
                                      const std::vector<const Mask*>& hard_exclusions);

double eligible_area_km2(const EligibilityRaster& raster);

// Debug export: binary PGM (P5), one byte per cell, 255 = set. Row 0 of the
// mask is the southern edge, so the image is written north-up.
void write_pgm(const Mask& mask, const std::string& path);

}  // namespace halite
