#pragma once

#include <vector>

#include "halite/grid.hpp"

namespace halite {

// Exact squared Euclidean distance transform (Felzenszwalb & Huttenlocher,
// Theory of Computing 8, 2012). Returns, for every cell, the squared
// distance in cell units to the nearest set cell of `seeds` (0 for seeds,
// +inf when the mask is empty). Squared distances between integer cell
// coordinates are computed exactly in doubles.
std::vector<double> squared_distance_transform(const Mask& seeds);

// Cells within `radius_cells` (center-to-center) of any seed cell.
Mask dilate(const Mask& seeds, double radius_cells);

}  // namespace halite
