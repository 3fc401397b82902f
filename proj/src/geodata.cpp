#include "halite/geodata.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "halite/csv.hpp"
#include "halite/errors.hpp"

namespace halite {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(ExclusionCategory c) {
    switch (c) {
        case ExclusionCategory::settlement: return "settlement";
        case ExclusionCategory::infrastructure: return "infrastructure";
        case ExclusionCategory::seismic_fault: return "seismic_fault";
        case ExclusionCategory::airport: return "airport";
        case ExclusionCategory::protected_area: return "protected_area";
        case ExclusionCategory::forest: return "forest";
        case ExclusionCategory::water_stress: return "water_stress";
        case ExclusionCategory::other: return "other";
    }
    return "other";
}

const char* to_string(SaltType t) { return t == SaltType::domal ? "domal" : "bedded"; }

const char* to_string(SuitabilityHint h) {
    switch (h) {
        case SuitabilityHint::unknown: return "unknown";
        case SuitabilityHint::guaranteed: return "guaranteed";
        case SuitabilityHint::partial: return "partial";
        case SuitabilityHint::unsuitable: return "unsuitable";
    }
    return "unknown";
}

const double* DemandTable::find(const std::string& iso3) const {
    for (const auto& [code, demand] : rows)
        if (code == iso3) return &demand;
    return nullptr;
}

const std::string* RegionMap::region_of(const std::string& iso3) const {
    for (const auto& [code, region] : rows)
        if (code == iso3) return &region;
    return nullptr;
}

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return j;
}

LonLat parse_position(const json& coord, const std::string& where) {
    if (!coord.is_array() || coord.size() < 2 || !coord[0].is_number() || !coord[1].is_number())
        throw GeometryError(where + ": position must be a [lon, lat] number pair");
    return {coord[0].get<double>(), coord[1].get<double>()};
}

// Parses a linear ring, dropping consecutive duplicate vertices and closing
// the ring when the endpoints differ (the one trivially fixable defect).
Ring parse_ring(const json& coords, const std::string& where) {
    Ring ring;
    for (const auto& c : coords) {
        const LonLat p = parse_position(c, where);
        if (!ring.empty() && ring.back().lon == p.lon && ring.back().lat == p.lat) continue;
        ring.push_back(p);
    }
    if (ring.size() >= 2 && ring.front().lon == ring.back().lon &&
        ring.front().lat == ring.back().lat) {
        // already closed
    } else if (!ring.empty()) {
        ring.push_back(ring.front());
    }
    if (ring.size() < 4)
        throw GeometryError(where + ": ring needs at least 3 distinct vertices");
    return ring;
}

Polygon parse_polygon_coords(const json& coords, const std::string& where) {
    if (!coords.is_array() || coords.empty())
        throw GeometryError(where + ": polygon without rings");
    Polygon poly;
    poly.outer = parse_ring(coords[0], where);
    for (std::size_t i = 1; i < coords.size(); ++i)
        poly.holes.push_back(parse_ring(coords[i], where));
    return poly;
}

MultiPolygon parse_deposit_geometry(const json& geom, const std::string& where) {
    if (!geom.is_object() || !geom.contains("type"))
        throw GeometryError(where + ": missing geometry");
    const std::string type = geom.value("type", "");
    MultiPolygon mp;
    if (type == "Polygon") {
        mp.polygons.push_back(parse_polygon_coords(geom.at("coordinates"), where));
    } else if (type == "MultiPolygon") {
        for (const auto& pc : geom.at("coordinates"))
            mp.polygons.push_back(parse_polygon_coords(pc, where));
    } else {
        throw GeometryError(where + ": deposit geometry must be Polygon or MultiPolygon, got " +
                            type);
    }
    for (const auto& poly : mp.polygons) {
        if (ring_self_intersects(poly.outer))
            throw GeometryError(where + ": outer ring self-intersects");
        for (const auto& hole : poly.holes)
            if (ring_self_intersects(hole))
                throw GeometryError(where + ": hole ring self-intersects");
    }
    return mp;
}

const json& require_prop(const json& props, const char* key, const std::string& where) {
    const auto it = props.find(key);
    if (it == props.end())
        throw SchemaError(where + ": missing required property \"" + key + "\"");
    return *it;
}

// Required property that may be null (= unknown / unexplored).
std::optional<double> nullable_number(const json& props, const char* key,
                                      const std::string& where) {
    const json& v = require_prop(props, key, where);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) throw SchemaError(where + ": property \"" + key + "\" must be a number");
    return v.get<double>();
}

double required_number(const json& props, const char* key, const std::string& where) {
    const json& v = require_prop(props, key, where);
    if (!v.is_number()) throw SchemaError(where + ": property \"" + key + "\" must be a number");
    return v.get<double>();
}

std::string required_string(const json& props, const char* key, const std::string& where) {
    const json& v = require_prop(props, key, where);
    if (!v.is_string()) throw SchemaError(where + ": property \"" + key + "\" must be a string");
    return v.get<std::string>();
}

SuitabilityHint parse_hint(const std::string& s, const std::string& where) {
    if (s == "unknown") return SuitabilityHint::unknown;
    if (s == "guaranteed") return SuitabilityHint::guaranteed;
    if (s == "partial") return SuitabilityHint::partial;
    if (s == "unsuitable") return SuitabilityHint::unsuitable;
    throw SchemaError(where + ": unknown suitability_hint \"" + s + "\"");
}

SaltDeposit parse_deposit_feature(const json& feature, std::size_t index,
                                  std::vector<LoadIssue>* issues) {
    std::string where = "feature #" + std::to_string(index);
    const json props = feature.value("properties", json::object());
    if (props.contains("id") && props.at("id").is_string())
        where = "deposit \"" + props.at("id").get<std::string>() + "\"";

    SaltDeposit d;
    d.id = required_string(props, "id", where);
    d.name = props.contains("name") && props.at("name").is_string()
                 ? props.at("name").get<std::string>()
                 : d.id;
    const std::string salt_type = required_string(props, "salt_type", where);
    if (salt_type == "domal") d.salt_type = SaltType::domal;
    else if (salt_type == "bedded") d.salt_type = SaltType::bedded;
    else throw SchemaError(where + ": salt_type must be \"domal\" or \"bedded\"");

    d.thickness_m = nullable_number(props, "thickness_m", where);
    if (d.thickness_m && *d.thickness_m <= 0)
        throw ValidationError(where + ": thickness_m must be positive");

    d.insoluble_fraction = nullable_number(props, "insoluble_fraction", where);
    if (d.insoluble_fraction && (*d.insoluble_fraction < 0.0 || *d.insoluble_fraction > 1.0))
        throw ValidationError(where + ": insoluble_fraction must be within [0, 1]");

    d.area_km2 = required_number(props, "area_km2", where);
    if (d.area_km2 <= 0) throw ValidationError(where + ": area_km2 must be positive");

    d.country_iso3 = required_string(props, "country_iso3", where);

    const bool has_min = props.contains("depth_top_min_m") && !props.at("depth_top_min_m").is_null();
    const bool has_max = props.contains("depth_top_max_m") && !props.at("depth_top_max_m").is_null();
    if (has_min != has_max)
        throw SchemaError(where + ": depth_top_min_m and depth_top_max_m must come together");
    if (has_min) {
        DepthInterval depth{required_number(props, "depth_top_min_m", where),
                            required_number(props, "depth_top_max_m", where)};
        if (depth.min_m <= 0 || depth.max_m <= 0)
            throw ValidationError(where + ": depth interval must be positive");
        if (depth.min_m > depth.max_m)
            throw ValidationError(where + ": depth_top_min_m exceeds depth_top_max_m");
        d.depth_top_m = depth;
    }

    if (props.contains("suitability_hint") && !props.at("suitability_hint").is_null())
        d.suitability_hint = parse_hint(required_string(props, "suitability_hint", where), where);

    if (!d.depth_top_m) {
        // Geologically unexplored depth: keep the deposit, flag it.
        d.suitability_hint = SuitabilityHint::unknown;
        if (issues)
            issues->push_back({where, "depth interval missing; loaded with suitability_hint "
                                      "unknown", false});
    }

    d.geometry = parse_deposit_geometry(feature.value("geometry", json()), where);

    const auto proj = LocalProjection::anchored_at(centroid(d.geometry));
    const double geom_area_km2 = multipolygon_area_m2(d.geometry, proj) / 1e6;
    const double rel = std::abs(geom_area_km2 - d.area_km2) / d.area_km2;
    if (rel > 0.05)
        throw ValidationError(where + ": area_km2=" + std::to_string(d.area_km2) +
                              " inconsistent with geometry area " +
                              std::to_string(geom_area_km2) + " km2 (" +
                              std::to_string(rel * 100.0) + "% off, limit 5%)");
    return d;
}

}  // namespace

std::vector<SaltDeposit> load_deposits(const std::string& path, std::vector<LoadIssue>* issues) {
    const json doc = read_json_file(path);
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features") || !doc.at("features").is_array())
        throw SchemaError(path + ": expected a GeoJSON FeatureCollection");

    std::vector<SaltDeposit> deposits;
    std::set<std::string> seen_ids;
    const auto& features = doc.at("features");
    for (std::size_t i = 0; i < features.size(); ++i) {
        try {
            SaltDeposit d = parse_deposit_feature(features[i], i, issues);
            if (!seen_ids.insert(d.id).second)
                throw ValidationError("deposit \"" + d.id + "\": duplicate id");
            deposits.push_back(std::move(d));
        } catch (const ValidationError& e) {
            if (!issues) throw;
            issues->push_back({"feature #" + std::to_string(i), e.what(), true});
        }
    }
    return deposits;
}

namespace {

json ring_to_json(const Ring& ring) {
    json out = json::array();
    for (const auto& p : ring) out.push_back(json::array({p.lon, p.lat}));
    return out;
}

json geometry_to_json(const MultiPolygon& mp) {
    const auto polygon_coords = [](const Polygon& poly) {
        json rings = json::array();
        rings.push_back(ring_to_json(poly.outer));
        for (const auto& hole : poly.holes) rings.push_back(ring_to_json(hole));
        return rings;
    };
    if (mp.polygons.size() == 1)
        return json{{"type", "Polygon"}, {"coordinates", polygon_coords(mp.polygons[0])}};
    json coords = json::array();
    for (const auto& poly : mp.polygons) coords.push_back(polygon_coords(poly));
    return json{{"type", "MultiPolygon"}, {"coordinates", coords}};
}

}  // namespace

json serialize_deposits(const std::vector<SaltDeposit>& deposits) {
    json features = json::array();
    for (const auto& d : deposits) {
        json props{{"id", d.id},
                   {"name", d.name},
                   {"salt_type", to_string(d.salt_type)},
                   {"thickness_m", d.thickness_m ? json(*d.thickness_m) : json()},
                   {"insoluble_fraction",
                    d.insoluble_fraction ? json(*d.insoluble_fraction) : json()},
                   {"area_km2", d.area_km2},
                   {"suitability_hint", to_string(d.suitability_hint)},
                   {"country_iso3", d.country_iso3}};
        props["depth_top_min_m"] = d.depth_top_m ? json(d.depth_top_m->min_m) : json();
        props["depth_top_max_m"] = d.depth_top_m ? json(d.depth_top_m->max_m) : json();
        features.push_back(json{{"type", "Feature"},
                                {"properties", props},
                                {"geometry", geometry_to_json(d.geometry)}});
    }
    return json{{"type", "FeatureCollection"}, {"features", features}};
}

namespace {

ExclusionCategory parse_category(const std::string& s, const std::string& where) {
    static const std::pair<const char*, ExclusionCategory> names[] = {
        {"settlement", ExclusionCategory::settlement},
        {"infrastructure", ExclusionCategory::infrastructure},
        {"seismic_fault", ExclusionCategory::seismic_fault},
        {"airport", ExclusionCategory::airport},
        {"protected_area", ExclusionCategory::protected_area},
        {"forest", ExclusionCategory::forest},
        {"water_stress", ExclusionCategory::water_stress},
        {"other", ExclusionCategory::other},
    };
    for (const auto& [name, cat] : names)
        if (s == name) return cat;
    throw ValidationError(where + ": unknown exclusion category \"" + s + "\"");
}

double default_buffer_m(ExclusionCategory c) {
    switch (c) {
        case ExclusionCategory::settlement: return 2000.0;
        case ExclusionCategory::seismic_fault: return 200.0;
        case ExclusionCategory::airport: return 20000.0;
        default: return 0.0;
    }
}

bool hard_by_default(ExclusionCategory c) {
    return c == ExclusionCategory::settlement || c == ExclusionCategory::seismic_fault;
}

}  // namespace

std::vector<ExclusionLayer> load_exclusion_manifest(const std::string& path) {
    const json doc = read_json_file(path);
    const json* entries = nullptr;
    if (doc.is_array()) entries = &doc;
    else if (doc.is_object() && doc.contains("layers") && doc.at("layers").is_array())
        entries = &doc.at("layers");
    else
        throw SchemaError(path + ": manifest must be a JSON array or {\"layers\": [...]}");

    const fs::path base = fs::path(path).parent_path();
    std::vector<ExclusionLayer> layers;
    for (std::size_t i = 0; i < entries->size(); ++i) {
        const json& e = (*entries)[i];
        const std::string where = path + ": layer #" + std::to_string(i);
        if (!e.is_object()) throw SchemaError(where + ": entry must be an object");

        ExclusionLayer layer;
        layer.category = parse_category(required_string(e, "category", where), where);

        const std::string rel = required_string(e, "path", where);
        layer.geometry_path = (fs::path(rel).is_absolute() ? fs::path(rel) : base / rel).string();

        layer.buffer_m = default_buffer_m(layer.category);
        if (e.contains("buffer_m") && !e.at("buffer_m").is_null()) {
            layer.buffer_m = required_number(e, "buffer_m", where);
            if (layer.buffer_m < 0) throw ValidationError(where + ": buffer_m must be >= 0");
        }

        layer.applies_in_horizontal_mode = hard_by_default(layer.category);
        if (e.contains("applies_in_horizontal_mode") &&
            !e.at("applies_in_horizontal_mode").is_null()) {
            const json& v = e.at("applies_in_horizontal_mode");
            if (!v.is_boolean())
                throw SchemaError(where + ": applies_in_horizontal_mode must be a boolean");
            if (hard_by_default(layer.category) && !v.get<bool>())
                throw ValidationError(where + ": " + to_string(layer.category) +
                                      " layers always apply in horizontal mode");
            layer.applies_in_horizontal_mode = v.get<bool>();
        }
        layers.push_back(std::move(layer));
    }
    return layers;
}

void load_layer_geometry(ExclusionLayer& layer) {
    const json doc = read_json_file(layer.geometry_path);
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
        !doc.contains("features"))
        throw SchemaError(layer.geometry_path + ": expected a GeoJSON FeatureCollection");

    GeometrySet gs;
    const auto& features = doc.at("features");
    for (std::size_t i = 0; i < features.size(); ++i) {
        const std::string where = layer.geometry_path + ": feature #" + std::to_string(i);
        const json& geom = features[i].value("geometry", json());
        if (geom.is_null()) continue;
        const std::string type = geom.value("type", "");
        const json& coords = geom.value("coordinates", json::array());
        if (type == "Point") {
            gs.points.push_back(parse_position(coords, where));
        } else if (type == "MultiPoint") {
            for (const auto& c : coords) gs.points.push_back(parse_position(c, where));
        } else if (type == "LineString") {
            LineString line;
            for (const auto& c : coords) line.push_back(parse_position(c, where));
            if (line.size() >= 2) gs.lines.push_back(std::move(line));
        } else if (type == "MultiLineString") {
            for (const auto& lc : coords) {
                LineString line;
                for (const auto& c : lc) line.push_back(parse_position(c, where));
                if (line.size() >= 2) gs.lines.push_back(std::move(line));
            }
        } else if (type == "Polygon") {
            gs.polygons.push_back(parse_polygon_coords(coords, where));
        } else if (type == "MultiPolygon") {
            for (const auto& pc : coords) gs.polygons.push_back(parse_polygon_coords(pc, where));
        } else {
            throw SchemaError(where + ": unsupported geometry type \"" + type + "\"");
        }
    }
    layer.geometry = std::move(gs);
}

DemandTable load_demand(const std::string& path) {
    const CsvTable csv = read_csv(path);
    const int c_iso = csv.column("country_iso3");
    const int c_demand = csv.column("annual_electricity_demand_TWh");
    if (c_iso < 0 || c_demand < 0)
        throw SchemaError(path +
                          ": header must contain country_iso3, annual_electricity_demand_TWh");
    DemandTable table;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        const std::string& iso = csv.rows[i][c_iso];
        if (!seen.insert(iso).second)
            throw ValidationError(path + ": duplicate country code " + iso);
        double demand = 0.0;
        try {
            demand = std::stod(csv.rows[i][c_demand]);
        } catch (...) {
            throw ValidationError(path + ": row " + std::to_string(i + 2) +
                                  ": demand is not a number");
        }
        if (demand < 0)
            throw ValidationError(path + ": row " + std::to_string(i + 2) +
                                  ": demand must be >= 0");
        table.rows.emplace_back(iso, demand);
    }
    return table;
}

RegionMap load_regions(const std::string& path) {
    const CsvTable csv = read_csv(path);
    const int c_iso = csv.column("country_iso3");
    const int c_region = csv.column("region_name");
    if (c_iso < 0 || c_region < 0)
        throw SchemaError(path + ": header must contain country_iso3, region_name");
    RegionMap map;
    std::set<std::string> seen;
    std::set<std::string> regions;
    for (const auto& row : csv.rows) {
        if (!seen.insert(row[c_iso]).second)
            throw ValidationError(path + ": country " + row[c_iso] +
                                  " assigned to more than one region");
        map.rows.emplace_back(row[c_iso], row[c_region]);
        regions.insert(row[c_region]);
    }
    map.regions.assign(regions.begin(), regions.end());
    return map;
}

LocalGrid build_local_grid(const SaltDeposit& deposit, double cell_size_m, double margin_m) {
    if (cell_size_m <= 0) throw ValidationError("cell_size_m must be positive");
    if (margin_m < 0) throw ValidationError("margin_m must be >= 0");
    if (deposit.geometry.empty())
        throw ValidationError("deposit \"" + deposit.id + "\" has no geometry");

    const LonLat anchor = centroid(deposit.geometry);
    if (std::abs(anchor.lat) > 85.0)
        throw ValidationError("deposit \"" + deposit.id +
                              "\" is too close to a pole for the local projection");
    const auto proj = LocalProjection::anchored_at(anchor);

    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    bool first = true;
    for (const auto& poly : deposit.geometry.polygons) {
        for (const auto& p : poly.outer) {
            const XY xy = proj.to_local(p);
            if (first) {
                min_x = max_x = xy.x;
                min_y = max_y = xy.y;
                first = false;
            } else {
                min_x = std::min(min_x, xy.x);
                max_x = std::max(max_x, xy.x);
                min_y = std::min(min_y, xy.y);
                max_y = std::max(max_y, xy.y);
            }
        }
    }

    constexpr double kMaxExtent = 2'000'000.0;  // beyond this the projection distorts too much
    if (max_x - min_x > kMaxExtent || max_y - min_y > kMaxExtent)
        throw ValidationError("deposit \"" + deposit.id +
                              "\" spans more than 2000 km; split it into smaller deposits");

    LocalGrid grid;
    grid.proj = proj;
    grid.cell_size_m = cell_size_m;
    grid.origin_x_m = std::floor((min_x - margin_m) / cell_size_m) * cell_size_m;
    grid.origin_y_m = std::floor((min_y - margin_m) / cell_size_m) * cell_size_m;
    grid.width = static_cast<int>(std::ceil((max_x + margin_m - grid.origin_x_m) / cell_size_m));
    grid.height = static_cast<int>(std::ceil((max_y + margin_m - grid.origin_y_m) / cell_size_m));
    grid.width = std::max(grid.width, 1);
    grid.height = std::max(grid.height, 1);
    return grid;
}

}  // namespace halite
