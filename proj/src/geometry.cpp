#include "halite/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace halite {

LocalProjection LocalProjection::anchored_at(LonLat anchor) {
    LocalProjection p;
    p.lon0 = anchor.lon;
    p.lat0 = anchor.lat;
    p.m_per_deg_lat = kMetersPerDegree;
    p.m_per_deg_lon = kMetersPerDegree * std::cos(anchor.lat * M_PI / 180.0);
    return p;
}

namespace {

void grow(BBox& box, LonLat p, bool& first) {
    if (first) {
        box = {p.lon, p.lat, p.lon, p.lat};
        first = false;
        return;
    }
    box.min_lon = std::min(box.min_lon, p.lon);
    box.min_lat = std::min(box.min_lat, p.lat);
    box.max_lon = std::max(box.max_lon, p.lon);
    box.max_lat = std::max(box.max_lat, p.lat);
}

}  // namespace

BBox bounds(const Ring& ring) {
    BBox box;
    bool first = true;
    for (const auto& p : ring) grow(box, p, first);
    return box;
}

BBox bounds(const MultiPolygon& mp) {
    BBox box;
    bool first = true;
    for (const auto& poly : mp.polygons)
        for (const auto& p : poly.outer) grow(box, p, first);
    return box;
}

BBox bounds(const GeometrySet& gs) {
    BBox box;
    bool first = true;
    for (const auto& poly : gs.polygons) {
        for (const auto& p : poly.outer) grow(box, p, first);
        for (const auto& hole : poly.holes)
            for (const auto& p : hole) grow(box, p, first);
    }
    for (const auto& line : gs.lines)
        for (const auto& p : line) grow(box, p, first);
    for (const auto& p : gs.points) grow(box, p, first);
    return box;
}

LonLat centroid(const MultiPolygon& mp) {
    // Shoelace centroid over outer rings in degree space; falls back to the
    // vertex mean for degenerate (zero-area) input.
    double area2 = 0.0, cx = 0.0, cy = 0.0;
    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (const auto& poly : mp.polygons) {
        const Ring& r = poly.outer;
        for (std::size_t i = 0; i + 1 < r.size(); ++i) {
            const double cross = r[i].lon * r[i + 1].lat - r[i + 1].lon * r[i].lat;
            area2 += cross;
            cx += (r[i].lon + r[i + 1].lon) * cross;
            cy += (r[i].lat + r[i + 1].lat) * cross;
            sx += r[i].lon;
            sy += r[i].lat;
            ++n;
        }
    }
    if (std::abs(area2) < 1e-18) {
        if (n == 0) return {0.0, 0.0};
        return {sx / n, sy / n};
    }
    return {cx / (3.0 * area2), cy / (3.0 * area2)};
}

namespace {

double ring_area_m2(const Ring& ring, const LocalProjection& proj) {
    double area2 = 0.0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        const XY a = proj.to_local(ring[i]);
        const XY b = proj.to_local(ring[i + 1]);
        area2 += a.x * b.y - b.x * a.y;
    }
    return std::abs(area2) * 0.5;
}

}  // namespace

double polygon_area_m2(const Polygon& poly, const LocalProjection& proj) {
    double area = ring_area_m2(poly.outer, proj);
    for (const auto& hole : poly.holes) area -= ring_area_m2(hole, proj);
    return area;
}

double multipolygon_area_m2(const MultiPolygon& mp, const LocalProjection& proj) {
    double area = 0.0;
    for (const auto& poly : mp.polygons) area += polygon_area_m2(poly, proj);
    return area;
}

bool point_in_ring(double x, double y, const std::vector<XY>& ring) {
    bool inside = false;
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
        const XY& a = ring[i];
        const XY& b = ring[j];
        if ((a.y > y) != (b.y > y)) {
            const double x_cross = (b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x;
            if (x < x_cross) inside = !inside;
        }
    }
    return inside;
}

namespace {

bool lonlat_in_ring(LonLat p, const Ring& ring) {
    bool inside = false;
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
        const LonLat& a = ring[i];
        const LonLat& b = ring[j];
        if ((a.lat > p.lat) != (b.lat > p.lat)) {
            const double x_cross = (b.lon - a.lon) * (p.lat - a.lat) / (b.lat - a.lat) + a.lon;
            if (p.lon < x_cross) inside = !inside;
        }
    }
    return inside;
}

}  // namespace

bool point_in_polygon(LonLat p, const Polygon& poly) {
    if (!lonlat_in_ring(p, poly.outer)) return false;
    for (const auto& hole : poly.holes)
        if (lonlat_in_ring(p, hole)) return false;
    return true;
}

bool point_in_multipolygon(LonLat p, const MultiPolygon& mp) {
    for (const auto& poly : mp.polygons)
        if (point_in_polygon(p, poly)) return true;
    return false;
}

namespace {

int orientation(LonLat a, LonLat b, LonLat c) {
    const double v = (b.lon - a.lon) * (c.lat - a.lat) - (b.lat - a.lat) * (c.lon - a.lon);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

bool on_segment(LonLat a, LonLat b, LonLat p) {
    return std::min(a.lon, b.lon) <= p.lon && p.lon <= std::max(a.lon, b.lon) &&
           std::min(a.lat, b.lat) <= p.lat && p.lat <= std::max(a.lat, b.lat);
}

bool segments_intersect(LonLat p1, LonLat p2, LonLat q1, LonLat q2) {
    const int o1 = orientation(p1, p2, q1);
    const int o2 = orientation(p1, p2, q2);
    const int o3 = orientation(q1, q2, p1);
    const int o4 = orientation(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

}  // namespace

bool ring_self_intersects(const Ring& ring) {
    // ring is closed; segments i = [v_i, v_{i+1}) for i in [0, n-1).
    if (ring.size() < 4) return true;  // not a polygon
    const std::size_t n = ring.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(ring[i], ring[i + 1], ring[j], ring[j + 1])) return true;
        }
    }
    return false;
}

double point_segment_sq_dist(XY p, XY a, XY b) {
    const double abx = b.x - a.x;
    const double aby = b.y - a.y;
    const double apx = p.x - a.x;
    const double apy = p.y - a.y;
    const double len_sq = abx * abx + aby * aby;
    double t = 0.0;
    if (len_sq > 0.0) t = std::clamp((apx * abx + apy * aby) / len_sq, 0.0, 1.0);
    const double dx = apx - t * abx;
    const double dy = apy - t * aby;
    return dx * dx + dy * dy;
}

}  // namespace halite
