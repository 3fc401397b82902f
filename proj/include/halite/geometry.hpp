#pragma once

#include <cstddef>
#include <vector>

namespace halite {

struct LonLat {
    double lon = 0.0;  // degrees, WGS84
    double lat = 0.0;
};

struct XY {
    double x = 0.0;  // meters in a local projection
    double y = 0.0;
};

// Closed ring: after parsing/repair, front() == back().
using Ring = std::vector<LonLat>;

struct Polygon {
    Ring outer;
    std::vector<Ring> holes;
};

struct MultiPolygon {
    std::vector<Polygon> polygons;

    bool empty() const { return polygons.empty(); }
};

using LineString = std::vector<LonLat>;

// Mixed-feature content of an exclusion layer.
struct GeometrySet {
    std::vector<Polygon> polygons;
    std::vector<LineString> lines;
    std::vector<LonLat> points;

    bool empty() const { return polygons.empty() && lines.empty() && points.empty(); }
};

struct BBox {
    double min_lon = 0.0, min_lat = 0.0, max_lon = 0.0, max_lat = 0.0;
};

// Meridian arc length per degree of latitude. Longitude degrees are scaled
// by cos(latitude) of the projection anchor.
inline constexpr double kMetersPerDegree = 111320.0;

// Equirectangular mapping anchored at a deposit centroid. Linear in both
// axes, so local round trips are exact up to floating point.
struct LocalProjection {
    double lon0 = 0.0;
    double lat0 = 0.0;
    double m_per_deg_lon = kMetersPerDegree;
    double m_per_deg_lat = kMetersPerDegree;

    static LocalProjection anchored_at(LonLat anchor);

    XY to_local(LonLat p) const {
        return {(p.lon - lon0) * m_per_deg_lon, (p.lat - lat0) * m_per_deg_lat};
    }
    LonLat to_lonlat(XY p) const {
        return {lon0 + p.x / m_per_deg_lon, lat0 + p.y / m_per_deg_lat};
    }
};

BBox bounds(const Ring& ring);
BBox bounds(const MultiPolygon& mp);
BBox bounds(const GeometrySet& gs);

// Area-weighted centroid of the outer rings, computed in degree space.
// Used only as the projection anchor, so planar treatment is fine.
LonLat centroid(const MultiPolygon& mp);

// Shoelace area of a projected polygon (holes subtracted), in m².
double polygon_area_m2(const Polygon& poly, const LocalProjection& proj);
double multipolygon_area_m2(const MultiPolygon& mp, const LocalProjection& proj);

// Even-odd point-in-polygon test against a single projected ring.
bool point_in_ring(double x, double y, const std::vector<XY>& ring);

// Even-odd test against a lon/lat polygon (holes flip parity).
bool point_in_polygon(LonLat p, const Polygon& poly);
bool point_in_multipolygon(LonLat p, const MultiPolygon& mp);

// True if any two non-adjacent ring segments intersect or adjacent
// segments overlap. Works directly in lon/lat space; the local projection
// is affine so the answer is projection-independent.
bool ring_self_intersects(const Ring& ring);

// Squared distance from p to segment [a, b], all in local meters.
double point_segment_sq_dist(XY p, XY a, XY b);

}  // namespace halite
