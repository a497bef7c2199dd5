#include "uavdep/terrain.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "uavdep/rng.hpp"

namespace uavdep {

TerrainMap::TerrainMap(Rect area, std::vector<Building> buildings)
    : area_(area), buildings_(std::move(buildings)) {
    if (area_.width() <= 0.0 || area_.height() <= 0.0)
        throw TerrainError("invalid terrain: empty area rectangle");
    for (std::size_t i = 0; i < buildings_.size(); ++i) {
        Building& b = buildings_[i];
        if (!is_simple_polygon(b.footprint))
            throw TerrainError("invalid terrain: building " + std::to_string(i) +
                               " footprint is not a simple polygon");
        if (!(b.height > 0.0) || !std::isfinite(b.height))
            throw TerrainError("invalid terrain: building " + std::to_string(i) +
                               " height must be positive and finite");
        b.bbox = polygon_bbox(b.footprint);
        for (const auto& v : b.footprint)
            if (!area_.contains(v, kGeomEps))
                throw TerrainError("invalid terrain: building " +
                                   std::to_string(i) + " leaves the area");
        max_height_ = std::max(max_height_, b.height);
    }
}

int TerrainMap::blockage_count(const Point3& user, const Point3& uav) const {
    const Vec2 a = user.ground();
    const Vec2 b = uav.ground();
    const Rect seg_box{std::min(a.x, b.x), std::min(a.y, b.y),
                       std::max(a.x, b.x), std::max(a.y, b.y)};
    const double z0 = user.z, dz = uav.z - user.z;
    int count = 0;
    for (const Building& bld : buildings_) {
        if (seg_box.x_max < bld.bbox.x_min - kGeomEps ||
            seg_box.x_min > bld.bbox.x_max + kGeomEps ||
            seg_box.y_max < bld.bbox.y_min - kGeomEps ||
            seg_box.y_min > bld.bbox.y_max + kGeomEps)
            continue;
        const auto intervals =
            segment_polygon_intervals(bld.footprint, a, b, kGeomEps);
        for (const auto& [t0, t1] : intervals) {
            // Segment altitude is affine in t; inf over the open interval is
            // the smaller endpoint value. Strictly below height => blocked.
            const double z_lo = z0 + dz * (dz >= 0.0 ? t0 : t1);
            if (z_lo < bld.height - kGeomEps) {
                ++count;
                break;
            }
        }
    }
    return count;
}

bool TerrainMap::inside_building(const Vec2& p) const {
    for (const Building& b : buildings_) {
        if (p.x < b.bbox.x_min || p.x > b.bbox.x_max || p.y < b.bbox.y_min ||
            p.y > b.bbox.y_max)
            continue;
        if (point_in_polygon(b.footprint, p)) return true;
    }
    return false;
}

TerrainMap sample_buildings(const Rect& area, double density,
                            double rayleigh_scale, const FootprintSpec& spec,
                            std::uint64_t seed) {
    if (density < 0.0) throw TerrainError("density must be >= 0");
    if (rayleigh_scale <= 0.0) throw TerrainError("rayleigh_scale must be > 0");
    if (spec.side_min <= 0.0 || spec.side_max < spec.side_min)
        throw TerrainError("bad footprint side range");

    Rng rng(seed);
    const int n = rng.poisson(density * area.area());
    std::vector<Building> bs;
    bs.reserve(static_cast<std::size_t>(n));
    constexpr int kMaxAttempts = 1000;
    for (int i = 0; i < n; ++i) {
        const double w = rng.uniform(spec.side_min, spec.side_max);
        const double l = rng.uniform(spec.side_min, spec.side_max);
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const double cx = rng.uniform(area.x_min, area.x_max);
            const double cy = rng.uniform(area.y_min, area.y_max);
            const double x0 = cx - 0.5 * w, x1 = cx + 0.5 * w;
            const double y0 = cy - 0.5 * l, y1 = cy + 0.5 * l;
            if (x0 < area.x_min || x1 > area.x_max || y0 < area.y_min ||
                y1 > area.y_max)
                continue;
            Building b;
            b.footprint = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
            b.height = rng.rayleigh(rayleigh_scale);
            if (b.height <= 0.0) b.height = 1e-6;
            bs.push_back(std::move(b));
            placed = true;
            break;
        }
        if (!placed)
            throw TerrainError(
                "building generation stalled: footprint does not fit the area");
    }
    return TerrainMap(area, std::move(bs));
}

std::string terrain_to_json(const TerrainMap& map) {
    nlohmann::json j;
    j["area"] = {{"x_min", map.area().x_min},
                 {"y_min", map.area().y_min},
                 {"x_max", map.area().x_max},
                 {"y_max", map.area().y_max}};
    j["buildings"] = nlohmann::json::array();
    for (const Building& b : map.buildings()) {
        nlohmann::json fp = nlohmann::json::array();
        for (const auto& v : b.footprint) fp.push_back({v.x, v.y});
        j["buildings"].push_back({{"footprint", fp}, {"height", b.height}});
    }
    return j.dump(2);
}

TerrainMap terrain_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw TerrainError(std::string("terrain parse error: ") + e.what());
    }
    try {
        Rect area{j.at("area").at("x_min").get<double>(),
                  j.at("area").at("y_min").get<double>(),
                  j.at("area").at("x_max").get<double>(),
                  j.at("area").at("y_max").get<double>()};
        std::vector<Building> bs;
        for (const auto& jb : j.at("buildings")) {
            Building b;
            for (const auto& jv : jb.at("footprint"))
                b.footprint.push_back({jv.at(0).get<double>(), jv.at(1).get<double>()});
            b.height = jb.at("height").get<double>();
            bs.push_back(std::move(b));
        }
        return TerrainMap(area, std::move(bs));
    } catch (const nlohmann::json::exception& e) {
        throw TerrainError(std::string("terrain schema error: ") + e.what());
    }
}

TerrainMap load_terrain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TerrainError("cannot open terrain file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return terrain_from_json(ss.str());
}

void save_terrain(const TerrainMap& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw TerrainError("cannot write terrain file: " + path);
    out << terrain_to_json(map) << '\n';
}

}  // namespace uavdep
