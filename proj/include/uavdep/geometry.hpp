#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace uavdep {

inline constexpr double kGeomEps = 1e-9;  // absolute tolerance, meters

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

inline double dist2(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Point3() = default;
    Point3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec2 ground() const { return {x, y}; }
};

inline double dist3(const Point3& a, const Point3& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct Rect {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }

    bool contains(const Vec2& p, double eps = 0.0) const {
        return p.x >= x_min - eps && p.x <= x_max + eps &&
               p.y >= y_min - eps && p.y <= y_max + eps;
    }
};

/// Axis-aligned bounding box of a polygon.
Rect polygon_bbox(const std::vector<Vec2>& poly);

/// Crossing-number point-in-polygon test. Points on the boundary are
/// treated as outside (grazing contact does not block).
bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p);

/// True iff the polygon has >= 3 vertices and no two non-adjacent edges
/// intersect.
bool is_simple_polygon(const std::vector<Vec2>& poly);

/// Parameter intervals [t0,t1] of the segment a + t*(b-a), t in [0,1],
/// whose interior lies strictly inside the polygon. Intervals shorter
/// than eps (in parameter space scaled by segment length) are dropped.
std::vector<std::pair<double, double>> segment_polygon_intervals(
    const std::vector<Vec2>& poly, const Vec2& a, const Vec2& b,
    double eps = kGeomEps);

}  // namespace uavdep
