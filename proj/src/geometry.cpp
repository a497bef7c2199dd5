#include "uavdep/geometry.hpp"

#include <algorithm>

namespace uavdep {

Rect polygon_bbox(const std::vector<Vec2>& poly) {
    Rect r{std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};
    for (const auto& v : poly) {
        r.x_min = std::min(r.x_min, v.x);
        r.y_min = std::min(r.y_min, v.y);
        r.x_max = std::max(r.x_max, v.x);
        r.y_max = std::max(r.y_max, v.y);
    }
    return r;
}

bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p) {
    // Crossing number with the usual half-open edge rule.
    const std::size_t n = poly.size();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[j];
        const Vec2& b = poly[i];
        if ((b.y > p.y) != (a.y > p.y)) {
            const double x_cross = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

namespace {

// Orientation sign with tolerance.
int orient(const Vec2& a, const Vec2& b, const Vec2& c, double eps) {
    const double v = (b - a).cross(c - a);
    if (v > eps) return 1;
    if (v < -eps) return -1;
    return 0;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p, double eps) {
    return p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps &&
           p.y >= std::min(a.y, b.y) - eps && p.y <= std::max(a.y, b.y) + eps;
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                        const Vec2& d, double eps) {
    const int o1 = orient(a, b, c, eps);
    const int o2 = orient(a, b, d, eps);
    const int o3 = orient(c, d, a, eps);
    const int o4 = orient(c, d, b, eps);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c, eps)) return true;
    if (o2 == 0 && on_segment(a, b, d, eps)) return true;
    if (o3 == 0 && on_segment(c, d, a, eps)) return true;
    if (o4 == 0 && on_segment(c, d, b, eps)) return true;
    return false;
}

}  // namespace

bool is_simple_polygon(const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        if (dist2(a, b) <= kGeomEps) return false;  // degenerate edge
        for (std::size_t j = i + 1; j < n; ++j) {
            // Skip adjacent edges (shared vertex).
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            const Vec2& c = poly[j];
            const Vec2& d = poly[(j + 1) % n];
            if (segments_intersect(a, b, c, d, kGeomEps)) return false;
        }
    }
    return true;
}

std::vector<std::pair<double, double>> segment_polygon_intervals(
    const std::vector<Vec2>& poly, const Vec2& a, const Vec2& b, double eps) {
    const Vec2 dir = b - a;
    const double len = dir.norm();
    std::vector<std::pair<double, double>> out;
    if (len <= eps) {
        if (point_in_polygon(poly, a)) out.emplace_back(0.0, 1.0);
        return out;
    }
    const double t_eps = eps / len;

    // Candidate parameters: endpoints plus every edge crossing.
    std::vector<double> ts{0.0, 1.0};
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& e0 = poly[j];
        const Vec2& e1 = poly[i];
        const Vec2 ed = e1 - e0;
        const double denom = dir.cross(ed);
        if (std::abs(denom) <= eps) continue;  // parallel/collinear: grazing
        const Vec2 diff = e0 - a;
        const double t = diff.cross(ed) / denom;
        const double s = diff.cross(dir) / denom;
        if (t >= -t_eps && t <= 1.0 + t_eps && s >= -t_eps && s <= 1.0 + t_eps)
            ts.push_back(std::clamp(t, 0.0, 1.0));
    }
    std::sort(ts.begin(), ts.end());

    // Midpoint test per sub-interval; merge adjacent inside intervals.
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double t0 = ts[i], t1 = ts[i + 1];
        if (t1 - t0 <= t_eps) continue;
        const double tm = 0.5 * (t0 + t1);
        if (!point_in_polygon(poly, a + dir * tm)) continue;
        if (!out.empty() && t0 - out.back().second <= t_eps)
            out.back().second = t1;
        else
            out.emplace_back(t0, t1);
    }
    return out;
}

}  // namespace uavdep
