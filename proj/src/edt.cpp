#include "halite/edt.hpp"

#include <algorithm>
#include <limits>

namespace halite {

namespace {

// Empty cells start at kFar instead of +inf so the parabola intersection
// arithmetic stays finite and exact: every quantity involved is an integer
// below 2^53, and kFar exceeds any reachable squared distance, so a kFar
// parabola can never shadow a real one. Outputs >= kFar mean "no seed".
constexpr double kFar = 4.0e15;

// 1-D squared distance transform of a sampled function (Felzenszwalb &
// Huttenlocher, Theory of Computing 8, 2012).
void dt_1d(const double* f, double* out, int* v, double* z, int n) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            const double qq = static_cast<double>(q);
            const double vk = static_cast<double>(v[k]);
            s = ((f[q] + qq * qq) - (f[v[k]] + vk * vk)) / (2.0 * qq - 2.0 * vk);
            if (s <= z[k] && k > 0) {
                --k;
                continue;
            }
            break;
        }
        if (s <= z[k]) {
            // k == 0 and the new parabola dominates everywhere
            v[0] = q;
        } else {
            ++k;
            v[k] = q;
            z[k] = s;
        }
        z[k + 1] = kInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const double d = q - v[k];
        out[q] = d * d + f[v[k]];
    }
}

}  // namespace

std::vector<double> squared_distance_transform(const Mask& seeds) {
    const int w = seeds.width;
    const int h = seeds.height;
    std::vector<double> dist(static_cast<std::size_t>(w) * h);
    for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = seeds.cells[i] ? 0.0 : kFar;

    const int n = std::max(w, h);
    std::vector<double> f(n), out(n), z(n + 1);
    std::vector<int> v(n);

    // columns, then rows
    for (int c = 0; c < w; ++c) {
        for (int r = 0; r < h; ++r) f[r] = dist[static_cast<std::size_t>(r) * w + c];
        dt_1d(f.data(), out.data(), v.data(), z.data(), h);
        for (int r = 0; r < h; ++r) dist[static_cast<std::size_t>(r) * w + c] = out[r];
    }
    for (int r = 0; r < h; ++r) {
        double* row = dist.data() + static_cast<std::size_t>(r) * w;
        for (int c = 0; c < w; ++c) f[c] = row[c];
        dt_1d(f.data(), out.data(), v.data(), z.data(), w);
        for (int c = 0; c < w; ++c) row[c] = out[c];
    }

    for (auto& d : dist)
        if (d >= kFar) d = std::numeric_limits<double>::infinity();
    return dist;
}

Mask dilate(const Mask& seeds, double radius_cells) {
    const auto dist = squared_distance_transform(seeds);
    Mask out(seeds.width, seeds.height);
    const double r_sq = radius_cells * radius_cells;
    for (std::size_t i = 0; i < dist.size(); ++i) out.cells[i] = dist[i] <= r_sq ? 1 : 0;
    return out;
}

}  // namespace halite
