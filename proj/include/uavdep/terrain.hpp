#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavdep/geometry.hpp"

namespace uavdep {

struct TerrainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Building {
    std::vector<Vec2> footprint;  // simple polygon, >= 3 vertices
    double height = 0.0;
    Rect bbox;  // cached on TerrainMap construction
};

class TerrainMap {
  public:
    TerrainMap() = default;
    TerrainMap(Rect area, std::vector<Building> buildings);

    const Rect& area() const { return area_; }
    const std::vector<Building>& buildings() const { return buildings_; }
    double max_building_height() const { return max_height_; }

    // Number of distinct buildings whose prism interior intersects the open
    // segment (user, uav). Grazing contact does not block.
    int blockage_count(const Point3& user, const Point3& uav) const;
    bool is_los(const Point3& user, const Point3& uav) const {
        return blockage_count(user, uav) == 0;
    }

    // True iff p lies inside some footprint (used to keep users outdoors).
    bool inside_building(const Vec2& p) const;

  private:
    Rect area_;
    std::vector<Building> buildings_;
    double max_height_ = 0.0;
};

struct FootprintSpec {
    double side_min = 15.0;  // meters
    double side_max = 40.0;
};

// Homogeneous PPP of rectangular buildings with Rayleigh heights.
TerrainMap sample_buildings(const Rect& area, double density,
                            double rayleigh_scale, const FootprintSpec& spec,
                            std::uint64_t seed);

TerrainMap load_terrain(const std::string& path);
void save_terrain(const TerrainMap& map, const std::string& path);

std::string terrain_to_json(const TerrainMap& map);
TerrainMap terrain_from_json(const std::string& text);

}  // namespace uavdep
