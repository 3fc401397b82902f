#include "halite/grid.hpp"

#include <algorithm>
#include <cmath>

#include "halite/errors.hpp"

namespace halite {

bool LocalGrid::index_of_local(XY p, int& row, int& col) const {
    const double fc = std::floor((p.x - origin_x_m) / cell_size_m);
    const double fr = std::floor((p.y - origin_y_m) / cell_size_m);
    if (fc < 0 || fr < 0 || fc >= width || fr >= height) return false;
    col = static_cast<int>(fc);
    row = static_cast<int>(fr);
    return true;
}

bool LocalGrid::index_of(LonLat p, int& row, int& col) const {
    return index_of_local(proj.to_local(p), row, col);
}

std::size_t Mask::count() const {
    std::size_t n = 0;
    for (const auto v : cells) n += (v != 0);
    return n;
}

namespace {

void require_same_shape(const Mask& a, const Mask& b) {
    if (!a.same_shape(b)) throw ValidationError("mask dimension mismatch");
}

}  // namespace

Mask mask_and(const Mask& a, const Mask& b) {
    require_same_shape(a, b);
    Mask out(a.width, a.height);
    for (std::size_t i = 0; i < a.cells.size(); ++i) out.cells[i] = a.cells[i] & b.cells[i];
    return out;
}

Mask mask_or(const Mask& a, const Mask& b) {
    require_same_shape(a, b);
    Mask out(a.width, a.height);
    for (std::size_t i = 0; i < a.cells.size(); ++i) out.cells[i] = a.cells[i] | b.cells[i];
    return out;
}

Mask mask_and_not(const Mask& a, const Mask& b) {
    require_same_shape(a, b);
    Mask out(a.width, a.height);
    for (std::size_t i = 0; i < a.cells.size(); ++i)
        out.cells[i] = static_cast<std::uint8_t>(a.cells[i] & (b.cells[i] ? 0 : 1));
    return out;
}

}  // namespace halite
