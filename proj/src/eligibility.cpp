#include "halite/eligibility.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "halite/edt.hpp"
#include "halite/errors.hpp"

namespace halite {

const char* to_string(DrillingMode::Kind k) {
    return k == DrillingMode::Kind::vertical ? "vertical" : "horizontal";
}

namespace {

using ProjectedRing = std::vector<XY>;

ProjectedRing project_ring(const Ring& ring, const LocalProjection& proj) {
    ProjectedRing out;
    out.reserve(ring.size());
    for (const auto& p : ring) out.push_back(proj.to_local(p));
    return out;
}

// Even-odd scanline fill over a set of rings. A cell is set iff the number
// of ring crossings strictly right of its center is odd — identical to the
// per-center ray-crossing test, evaluated row by row.
void fill_rings(Mask& mask, const LocalGrid& grid, const std::vector<ProjectedRing>& rings) {
    std::vector<double> crossings;
    for (int r = 0; r < grid.height; ++r) {
        const double y = grid.origin_y_m + (r + 0.5) * grid.cell_size_m;
        crossings.clear();
        for (const auto& ring : rings) {
            for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
                const XY& a = ring[i];
                const XY& b = ring[i + 1];
                if ((a.y > y) != (b.y > y))
                    crossings.push_back((b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x);
            }
        }
        if (crossings.empty()) continue;
        std::sort(crossings.begin(), crossings.end());
        for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
            // centers in [x0, x1): c >= (x0 - ox)/cell - 0.5, c < (x1 - ox)/cell - 0.5
            const double lo = (crossings[k] - grid.origin_x_m) / grid.cell_size_m - 0.5;
            const double hi = (crossings[k + 1] - grid.origin_x_m) / grid.cell_size_m - 0.5;
            int c0 = static_cast<int>(std::ceil(lo));
            for (int c = std::max(c0, 0); c < grid.width; ++c) {
                if (static_cast<double>(c) >= hi) break;
                mask.set(r, c, true);
            }
        }
    }
}

// Marks every cell whose center lies within buffer_m of the segment [a, b].
// A degenerate segment (a == b) stamps a disk.
void stamp_segment(Mask& mask, const LocalGrid& grid, XY a, XY b, double buffer_m) {
    const double min_x = std::min(a.x, b.x) - buffer_m;
    const double max_x = std::max(a.x, b.x) + buffer_m;
    const double min_y = std::min(a.y, b.y) - buffer_m;
    const double max_y = std::max(a.y, b.y) + buffer_m;

    const int c0 = std::max(0, static_cast<int>(std::floor((min_x - grid.origin_x_m) / grid.cell_size_m - 0.5)));
    const int c1 = std::min(grid.width - 1, static_cast<int>(std::ceil((max_x - grid.origin_x_m) / grid.cell_size_m - 0.5)));
    const int r0 = std::max(0, static_cast<int>(std::floor((min_y - grid.origin_y_m) / grid.cell_size_m - 0.5)));
    const int r1 = std::min(grid.height - 1, static_cast<int>(std::ceil((max_y - grid.origin_y_m) / grid.cell_size_m - 0.5)));

    const double buf_sq = buffer_m * buffer_m;
    for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            if (mask.get(r, c)) continue;
            if (point_segment_sq_dist(grid.cell_center(r, c), a, b) <= buf_sq)
                mask.set(r, c, true);
        }
    }
}

std::vector<ProjectedRing> project_polygon_rings(const std::vector<Polygon>& polygons,
                                                 const LocalProjection& proj) {
    std::vector<ProjectedRing> rings;
    for (const auto& poly : polygons) {
        rings.push_back(project_ring(poly.outer, proj));
        for (const auto& hole : poly.holes) rings.push_back(project_ring(hole, proj));
    }
    return rings;
}

}  // namespace

Mask rasterize_polygon(const MultiPolygon& mp, const LocalGrid& grid) {
    Mask mask(grid.width, grid.height);
    fill_rings(mask, grid, project_polygon_rings(mp.polygons, grid.proj));
    return mask;
}

Mask rasterize_exclusion(const ExclusionLayer& layer, const LocalGrid& grid) {
    Mask mask(grid.width, grid.height);
    const auto& gs = layer.geometry;

    const auto rings = project_polygon_rings(gs.polygons, grid.proj);
    fill_rings(mask, grid, rings);

    if (layer.buffer_m > 0) {
        for (const auto& ring : rings)
            for (std::size_t i = 0; i + 1 < ring.size(); ++i)
                stamp_segment(mask, grid, ring[i], ring[i + 1], layer.buffer_m);
    }
    for (const auto& line : gs.lines) {
        for (std::size_t i = 0; i + 1 < line.size(); ++i)
            stamp_segment(mask, grid, grid.proj.to_local(line[i]),
                          grid.proj.to_local(line[i + 1]), layer.buffer_m);
    }
    for (const auto& p : gs.points) {
        const XY xy = grid.proj.to_local(p);
        stamp_segment(mask, grid, xy, xy, layer.buffer_m);
    }
    return mask;
}

EligibilityRaster combine(const LocalGrid& grid, const Mask& deposit_mask,
                          const std::vector<std::pair<ExclusionCategory, Mask>>& exclusions) {
    if (deposit_mask.width != grid.width || deposit_mask.height != grid.height)
        throw ValidationError("combine: deposit mask does not match the grid");

    EligibilityRaster raster;
    raster.grid = grid;
    raster.deposit_mask = deposit_mask;
    raster.eligible = deposit_mask;

    for (const auto& [category, mask] : exclusions) {
        if (!mask.same_shape(deposit_mask))
            throw ValidationError("combine: exclusion mask dimension mismatch for layer " +
                                  std::string(to_string(category)));
        std::int64_t newly = 0;
        for (std::size_t i = 0; i < mask.cells.size(); ++i) {
            if (mask.cells[i] && raster.eligible.cells[i]) {
                raster.eligible.cells[i] = 0;
                ++newly;
            }
        }
        raster.provenance.emplace_back(category, newly);
    }
    return raster;
}

EligibilityRaster apply_drilling_mode(const EligibilityRaster& raster, const DrillingMode& mode,
                                      const std::vector<const Mask*>& hard_exclusions) {
    if (mode.kind == DrillingMode::Kind::vertical) return raster;
    if (mode.reach_m <= 0) throw ValidationError("horizontal drilling reach must be positive");

    // Reachable = within reach of a vertically eligible cell, center to
    // center. Subsidence-driven exclusions still apply.
    const Mask within = dilate(raster.eligible, mode.reach_m / raster.grid.cell_size_m);

    EligibilityRaster out = raster;
    out.eligible = mask_and(raster.deposit_mask, within);
    for (const Mask* hard : hard_exclusions) {
        if (!hard->same_shape(out.eligible))
            throw ValidationError("apply_drilling_mode: hard exclusion dimension mismatch");
        out.eligible = mask_and_not(out.eligible, *hard);
    }
    return out;
}

double eligible_area_km2(const EligibilityRaster& raster) {
    const double cell_km2 = raster.grid.cell_size_m * raster.grid.cell_size_m / 1e6;
    return static_cast<double>(raster.eligible.count()) * cell_km2;
}

void write_pgm(const Mask& mask, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
    // row 0 is the southern edge; emit north-up
    for (int r = mask.height - 1; r >= 0; --r) {
        for (int c = 0; c < mask.width; ++c) {
            const char v = mask.get(r, c) ? static_cast<char>(255) : 0;
            out.put(v);
        }
    }
    if (!out) throw IoError("failed while writing " + path);
}

}  // namespace halite
