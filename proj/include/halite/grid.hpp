#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "halite/geometry.hpp"

namespace halite {

// Regular metric grid covering one deposit plus the scenario's largest
// exclusion buffer. Row 0 is the southern edge; rows grow northward.
struct LocalGrid {
    LocalProjection proj;
    double origin_x_m = 0.0;  // lower-left corner, local meters
    double origin_y_m = 0.0;
    double cell_size_m = 100.0;
    int width = 0;   // columns (x)
    int height = 0;  // rows (y)

    std::size_t cell_count() const { return static_cast<std::size_t>(width) * height; }

    XY cell_center(int row, int col) const {
        return {origin_x_m + (col + 0.5) * cell_size_m,
                origin_y_m + (row + 0.5) * cell_size_m};
    }
    LonLat cell_center_lonlat(int row, int col) const {
        return proj.to_lonlat(cell_center(row, col));
    }

    // Cell containing a local-metric point; false if outside the grid.
    bool index_of_local(XY p, int& row, int& col) const;
    bool index_of(LonLat p, int& row, int& col) const;

    bool same_extent(const LocalGrid& other) const {
        return width == other.width && height == other.height &&
               origin_x_m == other.origin_x_m && origin_y_m == other.origin_y_m &&
               cell_size_m == other.cell_size_m;
    }
};

// Dense boolean raster; row-major, nonzero = set.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> cells;

    Mask() = default;
    Mask(int w, int h, bool value = false)
        : width(w), height(h), cells(static_cast<std::size_t>(w) * h, value ? 1 : 0) {}

    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * width + col;
    }
    bool get(int row, int col) const { return cells[index(row, col)] != 0; }
    void set(int row, int col, bool v) { cells[index(row, col)] = v ? 1 : 0; }

    bool same_shape(const Mask& other) const {
        return width == other.width && height == other.height;
    }
    std::size_t count() const;

    bool operator==(const Mask& other) const = default;
};

// Cellwise logic; shapes must match.
Mask mask_and(const Mask& a, const Mask& b);
Mask mask_or(const Mask& a, const Mask& b);
Mask mask_and_not(const Mask& a, const Mask& b);

}  // namespace halite
